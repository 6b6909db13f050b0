#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sqkit {

// Validates UTF-8, replacing every invalid byte sequence with U+FFFD.
// Returns the sanitized string; *lossy is set when any replacement happened.
std::string sanitize_utf8(std::string_view bytes, bool* lossy = nullptr);

// Collapses runs of ASCII whitespace (and U+00A0) to a single space and
// trims leading/trailing whitespace.
std::string collapse_whitespace(std::string_view text);

std::string to_lower(std::string_view text);

bool starts_with(std::string_view text, std::string_view prefix);
bool ends_with(std::string_view text, std::string_view suffix);

// Splits on any of the given separator characters. Empty tokens are dropped.
std::vector<std::string> split_on_any(std::string_view text, std::string_view separators);

// Splits on a single character, keeping empty tokens.
std::vector<std::string> split(std::string_view text, char separator);

std::string join(const std::vector<std::string>& parts, std::string_view separator);

std::string trim(std::string_view text);

// Case-insensitive substring test (ASCII).
bool icontains(std::string_view haystack, std::string_view needle);

}  // namespace sqkit
