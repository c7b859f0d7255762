#include "sdist/error.hpp"

namespace sdist {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "parse error";
    case ErrorKind::dimension_mismatch: return "dimension mismatch";
    case ErrorKind::duplicate_point: return "duplicate point";
    case ErrorKind::ambiguous_grouping: return "ambiguous grouping";
    case ErrorKind::not_on_sphere: return "not on sphere";
    case ErrorKind::not_antipodal: return "not antipodal";
    case ErrorKind::parameter: return "parameter error";
    case ErrorKind::unknown_name: return "unknown name";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::invalid_sign: return "invalid sign pattern";
    case ErrorKind::singular: return "singular";
    case ErrorKind::no_solution: return "no solution";
    case ErrorKind::zero_division: return "zero division";
    case ErrorKind::non_integer: return "non-integer input";
    case ErrorKind::size_mismatch: return "size mismatch";
    case ErrorKind::shape: return "shape error";
    case ErrorKind::decomposition_failure: return "decomposition failure";
  }
  return "error";
}

bool Error::is_input_error() const noexcept {
  switch (kind_) {
    case ErrorKind::degenerate:
    case ErrorKind::domain:
    case ErrorKind::singular:
    case ErrorKind::no_solution:
    case ErrorKind::decomposition_failure:
    case ErrorKind::zero_division:
      return false;
    default:
      return true;
  }
}

}  // namespace sdist
