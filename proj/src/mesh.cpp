#include "slope/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "slope/error.hpp"

namespace slope {

namespace {

struct GridSample {
    Vec3 r;
    Vec3 n;
    int side;  // sign of cos(xi + Q); 0 marks a singular sample
};

using SampleFn = std::function<GridSample(double, double)>;

void check_range(const MeshRange& r, const char* name) {
    if (r.n < 2) throw Error(ErrorKind::InvalidParam, fmt::format("{} count must be at least 2, got {}", name, r.n));
    if (!(r.hi > r.lo) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
        throw Error(ErrorKind::InvalidParam, fmt::format("{} range [{}, {}] is empty", name, r.lo, r.hi));
}

std::vector<double> uniform_axis(const MeshRange& r) {
    std::vector<double> out(static_cast<std::size_t>(r.n));
    for (int i = 0; i < r.n; ++i) out[static_cast<std::size_t>(i)] = r.lo + (r.hi - r.lo) * i / (r.n - 1);
    out.back() = r.hi;
    return out;
}

std::vector<double> geometric_axis(const MeshRange& r) {
    if (!(r.lo > 0.0)) throw Error(ErrorKind::DomainError, fmt::format("u range must start above 0, got {}", r.lo));
    const double l0 = std::log(r.lo);
    const double l1 = std::log(r.hi);
    std::vector<double> out(static_cast<std::size_t>(r.n));
    for (int i = 0; i < r.n; ++i) out[static_cast<std::size_t>(i)] = std::exp(l0 + (l1 - l0) * i / (r.n - 1));
    out.front() = r.lo;
    out.back() = r.hi;
    return out;
}

bool finite(const Vec3& p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); }

Mesh assemble(const SampleFn& sample, const std::vector<double>& us, const std::vector<double>& vs, int threads) {
    const std::size_t nu = us.size();
    const std::size_t nv = vs.size();
    std::vector<GridSample> grid(nu * nv);

    // Rows are dealt round-robin; each sample is a pure function of (u, v),
    // so the result does not depend on the thread count.
    const std::size_t workers = static_cast<std::size_t>(std::clamp(threads, 1, 64));
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](std::size_t w) {
        try {
            for (std::size_t i = w; i < nu; i += workers)
                for (std::size_t j = 0; j < nv; ++j) grid[i * nv + j] = sample(us[i], vs[j]);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    Mesh m;
    m.vertices.reserve(grid.size());
    m.normals.reserve(grid.size());
    for (const auto& g : grid) {
        // singular samples still get a finite placeholder so indices stay row-major
        m.vertices.push_back(finite(g.r) ? g.r : Vec3{});
        m.normals.push_back(finite(g.n) ? g.n : Vec3{0.0, 0.0, 1.0});
    }

    auto idx = [nv](std::size_t i, std::size_t j) { return static_cast<int>(i * nv + j); };
    auto add = [&m](int a, int b, int c) {
        const Vec3 fn = cross(m.vertices[static_cast<std::size_t>(b)] - m.vertices[static_cast<std::size_t>(a)],
                              m.vertices[static_cast<std::size_t>(c)] - m.vertices[static_cast<std::size_t>(a)]);
        const Vec3 avg = m.normals[static_cast<std::size_t>(a)] + m.normals[static_cast<std::size_t>(b)] +
                         m.normals[static_cast<std::size_t>(c)];
        if (dot(fn, avg) < 0.0) std::swap(b, c);
        m.faces.push_back({a, b, c});
    };
    for (std::size_t i = 0; i + 1 < nu; ++i) {
        for (std::size_t j = 0; j + 1 < nv; ++j) {
            const int c[4] = {idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)};
            const int side = grid[static_cast<std::size_t>(c[0])].side;
            bool ok = side != 0;
            for (int k = 1; k < 4 && ok; ++k) ok = grid[static_cast<std::size_t>(c[k])].side == side;
            if (!ok) {
                ++m.degenerate_skipped;
                continue;
            }
            add(c[0], c[1], c[2]);
            add(c[0], c[2], c[3]);
        }
    }
    if (m.faces.empty())
        throw Error(ErrorKind::AllSingular, fmt::format("all {} quads touch the singular set", m.degenerate_skipped));

    double seam = 0.0;
    for (std::size_t i = 0; i < nu; ++i)
        seam = std::max(seam, norm(m.vertices[i * nv] - m.vertices[i * nv + nv - 1]));
    m.v_seam = seam < 1e-9;
    return m;
}

}  // namespace

Mesh sample_mesh(const SlopeSurface& s, MeshRange u, MeshRange v, int threads) {
    check_range(u, "u");
    check_range(v, "v");
    const auto us = geometric_axis(u);
    const auto vs = uniform_axis(v);
    s.check_domain(us.front(), vs.front());
    s.check_domain(us.back(), vs.back());
    const double theta = s.theta();
    const SampleFn fn = [&s, theta](double uu, double vv) {
        const double c = std::cos(xi(uu, theta) + std::atan(jet(s.curve(), vv).kappa_g));
        GridSample g{position(s, uu, vv), closed_form_normal(s, uu, vv), c > 0.0 ? 1 : -1};
        if (std::abs(c) < 1e-8 || !finite(g.r) || !finite(g.n)) g.side = 0;
        return g;
    };
    return assemble(fn, us, vs, threads);
}

Mesh sample_mesh(const DegenerateSurface& s, MeshRange u, MeshRange v, int threads) {
    if (s.kind() != DegenerateKind::Sphere) return sample_mesh(s.as_slope_surface(), u, v, threads);
    check_range(u, "u");
    check_range(v, "v");
    if (u.lo < 0.0 || u.hi > std::numbers::pi)
        throw Error(ErrorKind::DomainError, fmt::format("colatitude range [{}, {}] outside [0, pi]", u.lo, u.hi));
    const SampleFn fn = [&s](double uu, double vv) {
        const SurfaceJet j = s.jet(uu, vv);
        return GridSample{j.r, j.normal, j.singular ? 0 : 1};
    };
    return assemble(fn, uniform_axis(u), uniform_axis(v), threads);
}

std::string obj_text(const Mesh& mesh) {
    if (mesh.faces.empty()) throw Error(ErrorKind::AllSingular, "mesh has no faces");
    std::string out;
    out.reserve(mesh.vertices.size() * 120 + mesh.faces.size() * 40);
    auto it = std::back_inserter(out);
    fmt::format_to(it, "# slope surface mesh: {} vertices, {} faces\n", mesh.vertices.size(), mesh.faces.size());
    for (const auto& p : mesh.vertices) fmt::format_to(it, "v {:.17g} {:.17g} {:.17g}\n", p.x, p.y, p.z);
    for (const auto& n : mesh.normals) fmt::format_to(it, "vn {:.17g} {:.17g} {:.17g}\n", n.x, n.y, n.z);
    for (const auto& f : mesh.faces)
        fmt::format_to(it, "f {0}//{0} {1}//{1} {2}//{2}\n", f.a + 1, f.b + 1, f.c + 1);
    return out;
}

void write_obj(const Mesh& mesh, const std::string& path) {
    const std::string text = obj_text(mesh);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorKind::IoError, fmt::format("cannot open {} for writing", path));
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!os) throw Error(ErrorKind::IoError, fmt::format("write to {} failed", path));
}

Mesh read_obj(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorKind::IoError, fmt::format("cannot open {}", path));
    Mesh m;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        auto bad = [&] { return Error(ErrorKind::ParseError, fmt::format("{}:{}: malformed '{}' record", path, lineno, tag)); };
        if (tag == "v" || tag == "vn") {
            Vec3 p;
            if (!(ls >> p.x >> p.y >> p.z)) throw bad();
            (tag == "v" ? m.vertices : m.normals).push_back(p);
        } else if (tag == "f") {
            int idx[3];
            for (int& k : idx) {
                std::string tok;
                if (!(ls >> tok)) throw bad();
                try {
                    k = std::stoi(tok.substr(0, tok.find('/'))) - 1;
                } catch (const std::exception&) {
                    throw bad();
                }
            }
            m.faces.push_back({idx[0], idx[1], idx[2]});
        } else {
            throw bad();
        }
    }
    return m;
}

}  // namespace slope
