#include "olct/error.hpp"

namespace olct {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::domain: return "domain";
    case ErrorCode::order_cap: return "order_cap";
    case ErrorCode::invalid_params: return "invalid_params";
    case ErrorCode::singular_params: return "singular_params";
    case ErrorCode::unsupported_branch: return "unsupported_branch";
    case ErrorCode::aliasing: return "aliasing";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::grid_mismatch: return "grid_mismatch";
    case ErrorCode::io: return "io";
    case ErrorCode::parse: return "parse";
    case ErrorCode::truncation: return "truncation";
  }
  return "unknown";
}

}  // namespace olct
