#include "qale/error.hpp"

namespace qale {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonUnitaryGenerator: return "NonUnitaryGenerator";
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::OrbitResolutionFailure: return "OrbitResolutionFailure";
    case ErrorKind::NonUniqueOrInconsistent: return "NonUniqueOrInconsistent";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DegenerateMetric: return "DegenerateMetric";
    case ErrorKind::PointTooSingular: return "PointTooSingular";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::IntegrationFailure: return "IntegrationFailure";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::BadRange: return "BadRange";
  }
  return "Unknown";
}

}  // namespace qale
