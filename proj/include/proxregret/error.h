#ifndef PROXREGRET_ERROR_H_
#define PROXREGRET_ERROR_H_

#include <stdexcept>
#include <string>

namespace proxregret {

enum class ErrorCode {
  kDimensionMismatch,
  kNonFinite,
  kUnbounded,
  kInvalidArgument,
  kProxNonconvergence,
  kComparatorInfeasible,
  kNotProxRepresentable,
  kNotEndomorphism,
  kProtocol,
  kStepSizeViolation,
  kConstantsViolated,
  kEmptyFamily,
  kNotOgTrace,
  kBoundaryDivergence,
  kUnsupported,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception; `code()` lets
// callers (and the CLI) distinguish contract violations from numerical ones.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by iterative prox solvers; carries the last fixed-point displacement.
class ProxNonconvergence : public Error {
 public:
  ProxNonconvergence(const std::string& message, double residual)
      : Error(ErrorCode::kProxNonconvergence, message), residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace proxregret

#endif  // PROXREGRET_ERROR_H_
