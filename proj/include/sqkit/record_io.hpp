#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sqkit/record.hpp"

namespace sqkit {

enum class RecordFormat { Jsonl, Csv };

// "jsonl" / "csv", case-insensitive. Throws std::invalid_argument otherwise.
RecordFormat record_format_from_string(const std::string& name);

// Picks the format from a path's extension (.jsonl/.ndjson -> Jsonl,
// .csv -> Csv). Throws std::invalid_argument on anything else.
RecordFormat record_format_from_path(const std::filesystem::path& path);

// Released-schema column names, in on-disk order. The two x_-prefixed
// working columns come after the released ones.
const std::vector<std::string>& record_field_names();

void write_records(const std::vector<QuoteRecord>& records, std::ostream& out,
                   RecordFormat format);
void write_records(const std::vector<QuoteRecord>& records,
                   const std::filesystem::path& path, RecordFormat format);

struct ReadRecordsResult {
  std::vector<QuoteRecord> records;
  int64_t skipped = 0;                  // schema-invalid rows (lenient mode)
  std::vector<std::string> errors;      // one message per skipped row
};

// strict=false: schema-invalid rows are skipped and counted.
// strict=true: the first schema-invalid row throws std::runtime_error.
ReadRecordsResult read_records(std::istream& in, RecordFormat format, bool strict = false);
ReadRecordsResult read_records(const std::filesystem::path& path, RecordFormat format,
                               bool strict = false);

}  // namespace sqkit
