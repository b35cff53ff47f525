#include "landau/error.hpp"

namespace landau {

std::string_view to_string(ErrorKind kind)
{
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Index: return "index";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::StepSize: return "step_size";
    case ErrorKind::NonFinite: return "non_finite";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Invariant: return "invariant";
    case ErrorKind::Io: return "io";
    case ErrorKind::DegenerateSample: return "degenerate_sample";
    case ErrorKind::QuadratureOrder: return "quadrature_order";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace landau
