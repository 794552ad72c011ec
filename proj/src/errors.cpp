#include "envoff/errors.hpp"

namespace envoff {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::SingularParameter: return "singular parameter";
    case ErrorCode::DegenerateDomain: return "degenerate domain";
    case ErrorCode::DegenerateFamily: return "degenerate family";
    case ErrorCode::Pole: return "pole";
    case ErrorCode::Bounds: return "bounds error";
    case ErrorCode::EmptyPlot: return "empty plot";
  }
  return "unknown error";
}

}  // namespace envoff
