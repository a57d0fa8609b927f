#pragma once

#include <stdexcept>
#include <string>

namespace valfield {

// Stable error codes, surfaced verbatim by the CLI.
enum class ErrorCode {
  BadArgument,
  ParseError,
  Overflow,
  UndecidableValue,
  DivisionByZero,
  PrecisionCollapse,
  PrecisionExhausted,
  NonPthPower,
  RootDepthExceeded,
  DenominatorCapExceeded,
  NegativeValue,
  NonpositiveValue,
  InseparableUnresolvable,
  RootFindingUnsupported,
  NotPseudoConvergent,
  PreconditionFailed,
  AttainedMaximum,
  DepthInsufficient,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace valfield
