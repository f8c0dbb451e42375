#pragma once

#include <stdexcept>
#include <string>

namespace trajplan {

// Error classes map 1:1 onto CLI exit codes (see exit_code()).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitParseError = 2,
  kExitValidationError = 3,
  kExitCapExceeded = 4,
  kExitIoError = 5,
};

}  // namespace trajplan
