#pragma once

#include <stdexcept>
#include <string>

namespace lenseq {

enum class ErrorCode {
  MixedDiscriminant,
  DivisionByZero,
  NegativeRadicand,
  NonSquareDiscriminant,
  ZeroMiddleTerm,
  ZeroDenominatorTerm,
  AllZero,
  NotPrimitive,
  NotIntegral,
  NonIntegerSequence,
  ComplexLambda,
  DegenerateAlpha,
  DivergentSum,
  SingularConfiguration,
  DegenerateK,
  DegenerateSeed,
  NotRenderable,
  ParseError,
  OutOfRange,
};

const char* error_code_name(ErrorCode code);

// Every domain failure in the library throws this; code() lets callers
// dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace lenseq
