#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bibliorank {

enum class ErrorCode {
  not_found,
  parse,
  validation,
  domain,
  internal_consistency,
  degenerate_baseline,
  io,
  format,
  config,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library. `line()` is set for parse errors so
// callers can point at the offending input row.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace bibliorank
