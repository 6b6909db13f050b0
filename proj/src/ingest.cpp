#include "sqkit/ingest.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sqkit/text.hpp"

namespace sqkit {

namespace {

// Buffered line/block reader over a gzFile (zlib reads plain files too).
class GzStream {
 public:
  explicit GzStream(const std::filesystem::path& path) {
    file_ = gzopen(path.string().c_str(), "rb");
    if (!file_) throw std::runtime_error("cannot open WARC file: " + path.string());
  }
  ~GzStream() {
    if (file_) gzclose(file_);
  }
  GzStream(const GzStream&) = delete;
  GzStream& operator=(const GzStream&) = delete;

  // Reads one line (terminated by \n); strips \r\n. Returns false at EOF
  // with no data.
  bool read_line(std::string& line) {
    line.clear();
    while (true) {
      for (size_t i = pos_; i < buffer_.size(); ++i) {
        if (buffer_[i] == '\n') {
          line.append(buffer_, pos_, i - pos_);
          pos_ = i + 1;
          if (!line.empty() && line.back() == '\r') line.pop_back();
          return true;
        }
      }
      line.append(buffer_, pos_, buffer_.size() - pos_);
      pos_ = 0;
      buffer_.clear();
      if (!fill()) return !line.empty();
    }
  }

  // Appends exactly n bytes to out; returns false on short read.
  bool read_exact(size_t n, std::string& out) {
    while (n > 0) {
      size_t available = buffer_.size() - pos_;
      if (available == 0) {
        pos_ = 0;
        buffer_.clear();
        if (!fill()) return false;
        continue;
      }
      size_t take = std::min(available, n);
      out.append(buffer_, pos_, take);
      pos_ += take;
      n -= take;
    }
    return true;
  }

 private:
  bool fill() {
    char chunk[1 << 15];
    int got = gzread(file_, chunk, sizeof(chunk));
    if (got <= 0) return false;
    buffer_.append(chunk, static_cast<size_t>(got));
    return true;
  }

  gzFile file_ = nullptr;
  std::string buffer_;
  size_t pos_ = 0;
};

struct HttpPayload {
  int status = 0;
  std::map<std::string, std::string> headers;  // lowercased names
  std::string body;
};

std::optional<HttpPayload> parse_http_response(const std::string& block) {
  HttpPayload out;
  size_t line_end = block.find('\n');
  if (line_end == std::string::npos) return std::nullopt;
  std::string status_line = trim(block.substr(0, line_end));
  if (!starts_with(status_line, "HTTP/")) return std::nullopt;
  size_t sp = status_line.find(' ');
  if (sp == std::string::npos) return std::nullopt;
  try {
    out.status = std::stoi(status_line.substr(sp + 1));
  } catch (const std::exception&) {
    return std::nullopt;
  }

  size_t cursor = line_end + 1;
  while (cursor < block.size()) {
    size_t next = block.find('\n', cursor);
    if (next == std::string::npos) next = block.size();
    std::string line = trim(block.substr(cursor, next - cursor));
    cursor = next + 1;
    if (line.empty()) break;  // end of headers
    size_t colon = line.find(':');
    if (colon == std::string::npos) continue;
    out.headers[to_lower(line.substr(0, colon))] = trim(line.substr(colon + 1));
  }
  if (cursor < block.size()) out.body = block.substr(cursor);
  return out;
}

bool looks_like_html(const HttpPayload& payload) {
  auto it = payload.headers.find("content-type");
  if (it != payload.headers.end()) {
    return icontains(it->second, "text/html") || icontains(it->second, "application/xhtml");
  }
  // No Content-Type header: sniff the body.
  std::string head = to_lower(trim(payload.body.substr(0, 256)));
  return starts_with(head, "<!doctype html") || starts_with(head, "<html");
}

}  // namespace

struct WarcReader::Impl {
  GzStream stream;
  IngestCounters counters;
  std::string snapshot;
  bool snapshot_fixed;

  Impl(const std::filesystem::path& path, std::string default_snapshot)
      : stream(path),
        snapshot(std::move(default_snapshot)),
        snapshot_fixed(!snapshot.empty()) {
    if (snapshot.empty()) snapshot = path.stem().string();
  }
};

WarcReader::WarcReader(const std::filesystem::path& path, std::string default_snapshot)
    : impl_(std::make_unique<Impl>(path, std::move(default_snapshot))) {}

WarcReader::~WarcReader() = default;
WarcReader::WarcReader(WarcReader&&) noexcept = default;
WarcReader& WarcReader::operator=(WarcReader&&) noexcept = default;

const IngestCounters& WarcReader::counters() const { return impl_->counters; }

std::optional<PageDocument> WarcReader::next() {
  auto& st = *impl_;
  std::string line;
  while (true) {
    // Scan to the next record header; this also resynchronizes after a
    // malformed record.
    bool found_version = false;
    while (st.stream.read_line(line)) {
      if (starts_with(trim(line), "WARC/")) {
        found_version = true;
        break;
      }
    }
    if (!found_version) return std::nullopt;
    st.counters.records_total += 1;

    std::map<std::string, std::string> headers;
    bool header_ok = true;
    uint64_t header_bytes = 0;
    while (true) {
      if (!st.stream.read_line(line)) {
        header_ok = false;
        break;
      }
      header_bytes += line.size();
      if (trim(line).empty()) break;
      size_t colon = line.find(':');
      if (colon == std::string::npos) {
        header_ok = false;
        break;
      }
      headers[to_lower(trim(line.substr(0, colon)))] = trim(line.substr(colon + 1));
    }
    if (!header_ok) {
      st.counters.malformed += 1;
      continue;
    }

    auto length_it = headers.find("content-length");
    uint64_t content_length = 0;
    if (length_it == headers.end()) {
      st.counters.malformed += 1;
      continue;
    }
    try {
      content_length = std::stoull(length_it->second);
    } catch (const std::exception&) {
      st.counters.malformed += 1;
      continue;
    }

    std::string block;
    block.reserve(content_length);
    if (!st.stream.read_exact(content_length, block)) {
      // Truncated record at end of file.
      st.counters.malformed += 1;
      return std::nullopt;
    }
    st.counters.max_record_bytes =
        std::max(st.counters.max_record_bytes, header_bytes + content_length);

    std::string type = to_lower(headers.count("warc-type") ? headers["warc-type"] : "");
    if (type == "warcinfo" && !st.snapshot_fixed) {
      // Common Crawl warcinfo blocks carry the crawl id as "isPartOf".
      for (const auto& info_line : split(block, '\n')) {
        std::string t = trim(info_line);
        if (starts_with(to_lower(t), "ispartof:")) {
          st.snapshot = trim(t.substr(t.find(':') + 1));
          break;
        }
      }
    }
    if (type != "response") {
      st.counters.skipped_non_response += 1;
      continue;
    }
    auto uri_it = headers.find("warc-target-uri");
    if (uri_it == headers.end() || uri_it->second.empty()) {
      st.counters.malformed += 1;
      continue;
    }

    auto payload = parse_http_response(block);
    if (!payload) {
      st.counters.malformed += 1;
      continue;
    }
    if (payload->status != 200) {
      st.counters.skipped_non_200 += 1;
      continue;
    }
    if (!looks_like_html(*payload)) {
      st.counters.skipped_non_html += 1;
      continue;
    }

    PageDocument doc;
    doc.url = uri_it->second;
    doc.snapshot_id = st.snapshot;
    doc.fetch_status = payload->status;
    doc.html = sanitize_utf8(payload->body, &doc.decode_lossy);
    st.counters.emitted += 1;
    return doc;
  }
}

HtmlDirReader::HtmlDirReader(const std::filesystem::path& dir) : dir_(dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw std::runtime_error("not a directory: " + dir.string());
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    if (name == "manifest.json") continue;
    files_.push_back(name);
  }
  std::sort(files_.begin(), files_.end());

  auto manifest_path = dir / "manifest.json";
  if (std::filesystem::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    nlohmann::json doc = nlohmann::json::parse(in);
    const nlohmann::json* url_map = &doc;
    if (doc.is_object() && doc.contains("urls")) {
      if (doc.contains("snapshot")) snapshot_ = doc["snapshot"].get<std::string>();
      url_map = &doc["urls"];
    }
    for (auto it = url_map->begin(); it != url_map->end(); ++it) {
      if (it.value().is_string()) urls_.emplace_back(it.key(), it.value().get<std::string>());
    }
  }
}

std::optional<std::string> HtmlDirReader::manifest_url(const std::string& filename) const {
  for (const auto& [name, url] : urls_) {
    if (name == filename) return url;
  }
  return std::nullopt;
}

std::optional<PageDocument> HtmlDirReader::next() {
  if (index_ >= files_.size()) return std::nullopt;
  std::string name = files_[index_++];
  counters_.records_total += 1;

  std::ifstream in(dir_ / name, std::ios::binary);
  if (!in) {
    counters_.malformed += 1;
    return next();
  }
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  PageDocument doc;
  if (auto url = manifest_url(name)) {
    doc.url = *url;
  } else {
    doc.url = "http://local.invalid/" + name;
    counters_.synthesized_url_warnings += 1;
  }
  doc.snapshot_id = snapshot_;
  doc.fetch_status = 200;
  doc.html = sanitize_utf8(bytes, &doc.decode_lossy);
  counters_.max_record_bytes = std::max<uint64_t>(counters_.max_record_bytes, bytes.size());
  counters_.emitted += 1;
  return doc;
}

}  // namespace sqkit
