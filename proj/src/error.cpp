#include "labelflow/error.hpp"

#include <utility>

namespace labelflow {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kBadParameters: return "BadParameters";
    case ErrorKind::kNonZeroMean: return "NonZeroMean";
    case ErrorKind::kDegenerateLoop: return "DegenerateLoop";
    case ErrorKind::kInsufficientHistory: return "InsufficientHistory";
    case ErrorKind::kCflViolation: return "CflViolation";
    case ErrorKind::kNonFinite: return "NonFinite";
    case ErrorKind::kNoContraction: return "NoContraction";
    case ErrorKind::kGridMismatch: return "GridMismatch";
    case ErrorKind::kConfigError: return "ConfigError";
    case ErrorKind::kIo: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

NoContractionError::NoContractionError(const std::string& message,
                                       std::vector<double> residuals)
    : Error(ErrorKind::kNoContraction, message), residuals_(std::move(residuals)) {}

}  // namespace labelflow
