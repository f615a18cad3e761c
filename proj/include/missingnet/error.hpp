#pragma once

#include <stdexcept>
#include <string>

namespace missingnet {

/// Failure categories. The numeric values double as CLI exit codes.
enum class ErrorCategory : int {
  invalid_input = 2,
  unscalable_feature = 3,
  member_unusable = 4,
  model_not_trained = 5,
  no_usable_member = 6,
  divergence = 7,
  io = 8,
};

const char* category_name(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory category, const std::string& what) {
  throw Error(category, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorCategory::invalid_input, what);
}

}  // namespace missingnet
