#pragma once

// Grid sampling into triangle meshes and Wavefront OBJ text.

#include <string>
#include <vector>

#include "slope/numkit.hpp"
#include "slope/slope_surface.hpp"

namespace slope {

struct Face {
    int a, b, c;  // 0-based
};

struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<Vec3> normals;  // closed-form unit normal at each vertex
    std::vector<Face> faces;
    int degenerate_skipped = 0;
    bool v_seam = false;  // first and last v columns coincide (vertices are not welded)
};

struct MeshRange {
    double lo;
    double hi;
    int n;
};

/// Row-major nu x nv grid; u is spaced geometrically (uniform in log u), v
/// uniformly. Quads touching a singular sample, or straddling the cuspidal
/// edge cos(xi + Q) = 0, are skipped and counted. Output does not depend on
/// `threads`. Throws AllSingular when no face survives.
Mesh sample_mesh(const SlopeSurface& s, MeshRange u, MeshRange v, int threads = 1);

/// Sphere branch (u = colatitude, uniform) and cone/plane branch.
Mesh sample_mesh(const DegenerateSurface& s, MeshRange u, MeshRange v, int threads = 1);

/// OBJ text with 17 significant digits and LF endings. Throws AllSingular on
/// a mesh without faces.
std::string obj_text(const Mesh& mesh);

/// Writes obj_text to `path`. Nothing is created when the mesh is empty.
/// Throws IoError.
void write_obj(const Mesh& mesh, const std::string& path);

/// Reads back `v`, `vn` and `f a//a b//b c//c` records. Throws IoError, ParseError.
Mesh read_obj(const std::string& path);

}  // namespace slope
