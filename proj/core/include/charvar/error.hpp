#pragma once

#include <stdexcept>
#include <string>

namespace charvar {

enum class ErrorKind {
  Usage,
  Parse,
  Validation,
  Hypothesis,
  ResourceLimit,
  InternalConsistency,
  Inconclusive,
};

// Every failure carries a stable machine-readable code and, where relevant,
// the name of the hypothesis that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message,
        std::string hypothesis = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }
  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  ErrorKind kind_;
  std::string code_;
  std::string hypothesis_;
};

const char* to_string(ErrorKind kind) noexcept;

// 0 ok, 1 usage/parse/validation, 2 hypothesis, 3 resource, 4 consistency.
int exit_code(ErrorKind kind) noexcept;

}  // namespace charvar
