#include "sqkit/record_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sqkit/csv.hpp"
#include "sqkit/text.hpp"

namespace sqkit {

using ordered_json = nlohmann::ordered_json;

RecordFormat record_format_from_string(const std::string& name) {
  std::string lowered = to_lower(name);
  if (lowered == "jsonl" || lowered == "ndjson") return RecordFormat::Jsonl;
  if (lowered == "csv") return RecordFormat::Csv;
  throw std::invalid_argument("unknown record format: " + name);
}

RecordFormat record_format_from_path(const std::filesystem::path& path) {
  std::string ext = to_lower(path.extension().string());
  if (ext == ".jsonl" || ext == ".ndjson") return RecordFormat::Jsonl;
  if (ext == ".csv") return RecordFormat::Csv;
  throw std::invalid_argument("cannot infer record format from: " + path.string());
}

const std::vector<std::string>& record_field_names() {
  static const std::vector<std::string> names = {
      "id",
      "common_crawl_snapshot",
      "common_crawl_url",
      "social_post_url",
      "social_user_profile",
      "context_topics",
      "role_labels",
      "x_platform",
      "x_context_snippet",
  };
  return names;
}

namespace {

// role_labels travels as a JSON object string ({"COMMENTER": 3, ...}) in
// both formats, mirroring the released files.
std::string role_labels_string(const std::map<std::string, int>& labels) {
  ordered_json obj = ordered_json::object();
  for (const auto& [role, count] : labels) obj[role] = count;
  return obj.dump();
}

std::string topics_string(const std::vector<std::string>& topics) {
  ordered_json arr = ordered_json::array();
  for (const auto& topic : topics) arr.push_back(topic);
  return arr.dump();
}

ordered_json record_to_json(const QuoteRecord& record) {
  ordered_json row = ordered_json::object();
  row["id"] = record.id;
  row["common_crawl_snapshot"] = record.common_crawl_snapshot;
  row["common_crawl_url"] = record.common_crawl_url;
  row["social_post_url"] = record.social_post_url;
  row["social_user_profile"] = record.social_user_profile;
  ordered_json topics = ordered_json::array();
  for (const auto& topic : record.context_topics) topics.push_back(topic);
  row["context_topics"] = topics;
  if (record.role_labels) {
    row["role_labels"] = role_labels_string(*record.role_labels);
  } else {
    row["role_labels"] = nullptr;
  }
  row["x_platform"] = record.platform.name;
  row["x_context_snippet"] = record.context_snippet;
  return row;
}

std::string expect_string(const ordered_json& row, const std::string& key) {
  if (!row.contains(key)) throw std::runtime_error("missing field: " + key);
  const auto& value = row.at(key);
  if (!value.is_string()) throw std::runtime_error("field is not a string: " + key);
  return value.get<std::string>();
}

std::map<std::string, int> parse_role_labels(const std::string& text) {
  ordered_json obj = ordered_json::parse(text);
  if (!obj.is_object()) throw std::runtime_error("role_labels is not a JSON object");
  std::map<std::string, int> labels;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!it.value().is_number_integer()) {
      throw std::runtime_error("role_labels count is not an integer");
    }
    labels[it.key()] = it.value().get<int>();
  }
  return labels;
}

QuoteRecord record_from_json(const ordered_json& row) {
  QuoteRecord record;
  record.id = expect_string(row, "id");
  record.common_crawl_snapshot = expect_string(row, "common_crawl_snapshot");
  record.common_crawl_url = expect_string(row, "common_crawl_url");
  record.social_post_url = expect_string(row, "social_post_url");
  record.social_user_profile = expect_string(row, "social_user_profile");
  if (!row.contains("context_topics")) throw std::runtime_error("missing field: context_topics");
  for (const auto& topic : row.at("context_topics")) {
    if (!topic.is_string()) throw std::runtime_error("context_topics entry is not a string");
    record.context_topics.push_back(topic.get<std::string>());
  }
  if (row.contains("role_labels") && !row.at("role_labels").is_null()) {
    record.role_labels = parse_role_labels(expect_string(row, "role_labels"));
  }
  record.platform = Platform(expect_string(row, "x_platform"));
  record.context_snippet = expect_string(row, "x_context_snippet");
  if (auto problem = validate_record_shape(record)) throw std::runtime_error(*problem);
  return record;
}

std::vector<std::string> record_to_csv_fields(const QuoteRecord& record) {
  return {
      record.id,
      record.common_crawl_snapshot,
      record.common_crawl_url,
      record.social_post_url,
      record.social_user_profile,
      topics_string(record.context_topics),
      record.role_labels ? role_labels_string(*record.role_labels) : "",
      record.platform.name,
      record.context_snippet,
  };
}

QuoteRecord record_from_csv_fields(const std::vector<std::string>& fields) {
  if (fields.size() != record_field_names().size()) {
    throw std::runtime_error("wrong column count: " + std::to_string(fields.size()));
  }
  QuoteRecord record;
  record.id = fields[0];
  record.common_crawl_snapshot = fields[1];
  record.common_crawl_url = fields[2];
  record.social_post_url = fields[3];
  record.social_user_profile = fields[4];
  ordered_json topics = ordered_json::parse(fields[5]);
  if (!topics.is_array()) throw std::runtime_error("context_topics is not a JSON array");
  for (const auto& topic : topics) {
    if (!topic.is_string()) throw std::runtime_error("context_topics entry is not a string");
    record.context_topics.push_back(topic.get<std::string>());
  }
  if (!fields[6].empty()) record.role_labels = parse_role_labels(fields[6]);
  record.platform = Platform(fields[7]);
  record.context_snippet = fields[8];
  if (auto problem = validate_record_shape(record)) throw std::runtime_error(*problem);
  return record;
}

}  // namespace

void write_records(const std::vector<QuoteRecord>& records, std::ostream& out,
                   RecordFormat format) {
  if (format == RecordFormat::Jsonl) {
    for (const auto& record : records) out << record_to_json(record).dump() << "\n";
    return;
  }
  write_csv_row(out, record_field_names());
  for (const auto& record : records) write_csv_row(out, record_to_csv_fields(record));
}

void write_records(const std::vector<QuoteRecord>& records,
                   const std::filesystem::path& path, RecordFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  write_records(records, out, format);
  if (!out.good()) throw std::runtime_error("write failed: " + path.string());
}

ReadRecordsResult read_records(std::istream& in, RecordFormat format, bool strict) {
  ReadRecordsResult result;
  auto reject = [&](int64_t index, const std::string& what) {
    std::string message = "row " + std::to_string(index) + ": " + what;
    if (strict) throw std::runtime_error(message);
    result.skipped += 1;
    result.errors.push_back(message);
  };

  if (format == RecordFormat::Jsonl) {
    std::string line;
    int64_t index = 0;
    while (std::getline(in, line)) {
      index += 1;
      if (trim(line).empty()) continue;
      try {
        result.records.push_back(record_from_json(ordered_json::parse(line)));
      } catch (const std::exception& err) {
        reject(index, err.what());
      }
    }
    return result;
  }

  auto header = read_csv_row(in);
  if (!header) throw std::runtime_error("empty CSV input");
  if (*header != record_field_names()) {
    throw std::runtime_error("unexpected CSV header: " + join(*header, ","));
  }
  int64_t index = 1;
  while (auto fields = read_csv_row(in)) {
    index += 1;
    if (fields->size() == 1 && (*fields)[0].empty()) continue;  // trailing blank line
    try {
      result.records.push_back(record_from_csv_fields(*fields));
    } catch (const std::exception& err) {
      reject(index, err.what());
    }
  }
  return result;
}

ReadRecordsResult read_records(const std::filesystem::path& path, RecordFormat format,
                               bool strict) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  return read_records(in, format, strict);
}

}  // namespace sqkit
