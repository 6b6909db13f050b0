#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sqkit {

// RFC 4180 field quoting: quotes when the value contains a comma, quote,
// CR or LF; embedded quotes are doubled.
std::string csv_escape(std::string_view field);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Reads one CSV record (which may span physical lines inside quoted fields).
// Returns std::nullopt at end of input.
std::optional<std::vector<std::string>> read_csv_row(std::istream& in);

}  // namespace sqkit
