#pragma once

#include <stdexcept>
#include <string>

namespace raceline {

enum class ErrorCode {
  invalid_argument = 1,
  parse = 2,
  validation = 3,
  geometry = 4,
  solver_failure = 5,
  blocked_corridor = 6,
  io = 7,
  internal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace raceline
