#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace featalign {

enum class ErrorCode {
  kEmptyFeatureName,
  kInvalidK,
  kInvalidConfig,
  kEmptyClass,
  kNoEvaluableClasses,
  kSeriesMismatch,
  kIncompleteResults,
  kInvalidSynthSpec,
  kIo,
  kParse,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the core carries a machine-readable code; the C API
// maps it onto a status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace featalign
