#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sqkit/record.hpp"

namespace sqkit {

struct IngestCounters {
  int64_t records_total = 0;
  int64_t emitted = 0;
  int64_t skipped_non_response = 0;
  int64_t skipped_non_html = 0;
  int64_t skipped_non_200 = 0;
  int64_t malformed = 0;
  int64_t synthesized_url_warnings = 0;
  // High-water mark for a single record's buffered bytes; stays bounded by
  // the largest record, not the corpus.
  uint64_t max_record_bytes = 0;

  int64_t skipped_total() const {
    return skipped_non_response + skipped_non_html + skipped_non_200 + malformed;
  }
};

// Streams response records with an HTML payload out of a WARC file
// (plain or gzip-compressed, multi-member gzip included). One record is
// buffered at a time. Malformed records are skipped and counted; the reader
// resynchronizes on the next "WARC/" version line.
class WarcReader {
 public:
  explicit WarcReader(const std::filesystem::path& path, std::string default_snapshot = "");
  ~WarcReader();
  WarcReader(WarcReader&&) noexcept;
  WarcReader& operator=(WarcReader&&) noexcept;

  std::optional<PageDocument> next();
  const IngestCounters& counters() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Streams one PageDocument per file in a directory, in stable filename order.
// URLs come from a sidecar manifest.json ({"urls": {file: url}, "snapshot":
// id} or a flat {file: url} object); files missing from the manifest get a
// synthesized URL and a warning count.
class HtmlDirReader {
 public:
  explicit HtmlDirReader(const std::filesystem::path& dir);

  std::optional<PageDocument> next();
  const IngestCounters& counters() const { return counters_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
  size_t index_ = 0;
  std::string snapshot_ = "local";
  std::optional<std::string> manifest_url(const std::string& filename) const;
  std::vector<std::pair<std::string, std::string>> urls_;
  IngestCounters counters_;
};

}  // namespace sqkit
