#pragma once

#include <stdexcept>
#include <string>

namespace olct {

// Numeric values are part of the C ABI (see olct.h); do not renumber.
enum class ErrorCode : int {
  ok = 0,
  domain = 1,
  order_cap = 2,
  invalid_params = 3,
  singular_params = 4,
  unsupported_branch = 5,
  aliasing = 6,
  precondition = 7,
  grid_mismatch = 8,
  io = 9,
  parse = 10,
  truncation = 11,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace olct
