#include "charvar/error.hpp"

#include <utility>

namespace charvar {

Error::Error(ErrorKind kind, std::string code, const std::string& message,
             std::string hypothesis)
    : std::runtime_error(message),
      kind_(kind),
      code_(std::move(code)),
      hypothesis_(std::move(hypothesis)) {}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Hypothesis: return "hypothesis";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::InternalConsistency: return "internal-consistency";
    case ErrorKind::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Hypothesis: return 2;
    case ErrorKind::ResourceLimit: return 3;
    case ErrorKind::InternalConsistency: return 4;
    default: return 1;
  }
}

}  // namespace charvar
