#include "layoutgt/error.hpp"

namespace layoutgt {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
  std::string message = "validation failed";
  for (const auto& v : violations) {
    message += "\n  - ";
    message += v;
  }
  return message;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

}  // namespace layoutgt
