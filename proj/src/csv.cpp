#include "sqkit/csv.hpp"

#include <istream>
#include <ostream>

namespace sqkit {

std::string csv_escape(std::string_view field) {
  bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(',');
    out << csv_escape(fields[i]);
  }
  out.put('\n');
}

std::optional<std::vector<std::string>> read_csv_row(std::istream& in) {
  int first = in.peek();
  if (first == std::char_traits<char>::eof()) return std::nullopt;

  std::vector<std::string> fields;
  std::string current;
  bool in_quotes = false;
  bool saw_any = false;
  char c;
  while (in.get(c)) {
    saw_any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          current.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        current.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else if (c == '\n') {
      break;
    } else if (c == '\r') {
      if (in.peek() == '\n') in.get(c);
      break;
    } else {
      current.push_back(c);
    }
  }
  if (!saw_any) return std::nullopt;
  fields.push_back(std::move(current));
  return fields;
}

}  // namespace sqkit
