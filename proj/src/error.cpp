#include "slope/error.hpp"

namespace slope {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::InvalidParam: return "InvalidParam";
        case ErrorKind::DegenerateCurve: return "DegenerateCurve";
        case ErrorKind::NotUnitSpeed: return "NotUnitSpeed";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::SingularPoint: return "SingularPoint";
        case ErrorKind::StructureSingularity: return "StructureSingularity";
        case ErrorKind::DegenerateMetric: return "DegenerateMetric";
        case ErrorKind::OriginSample: return "OriginSample";
        case ErrorKind::PoleSingularity: return "PoleSingularity";
        case ErrorKind::DegenerateFrenet: return "DegenerateFrenet";
        case ErrorKind::AllSingular: return "AllSingular";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace slope
