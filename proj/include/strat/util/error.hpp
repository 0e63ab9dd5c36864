#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace strat {

/// Domain-level failure with a stable machine-readable code.
/// The CLI maps these to `error: <code>: <detail>` on exit 1.
class DomainError : public std::runtime_error {
public:
  DomainError(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

} // namespace strat
