#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bibliorank::csv {

/// Splits one CSV record (RFC 4180 quoting, no embedded newlines).
/// Returns nullopt on an unterminated quoted field.
std::optional<std::vector<std::string>> split_record(std::string_view line);

/// Quotes a field when it contains a comma, quote, or leading/trailing space.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

}  // namespace bibliorank::csv
