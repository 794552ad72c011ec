#pragma once

#include <stdexcept>
#include <string>

namespace envoff {

enum class ErrorCode {
  InvalidArgument = 1,
  Domain = 2,
  SingularParameter = 3,
  DegenerateDomain = 4,
  DegenerateFamily = 5,
  Pole = 6,
  Bounds = 7,
  EmptyPlot = 8,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace envoff
