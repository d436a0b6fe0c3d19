#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace labelflow {

/// Failure categories. The CLI maps these onto exit codes and prints the
/// category name so that callers can react without parsing messages.
enum class ErrorKind {
  kBadParameters,
  kNonZeroMean,
  kDegenerateLoop,
  kInsufficientHistory,
  kCflViolation,
  kNonFinite,
  kNoContraction,
  kGridMismatch,
  kConfigError,
  kIo,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the successive-approximation engine when the residuals stop
/// shrinking. Carries the residual history observed so far.
class NoContractionError : public Error {
 public:
  NoContractionError(const std::string& message, std::vector<double> residuals);

  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

}  // namespace labelflow
