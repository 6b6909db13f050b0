#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace sqkit::testing {

// Unique scratch directory, removed on scope exit.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path = std::filesystem::temp_directory_path() /
           ("sqkit_test_" + std::to_string(rd()) + "_" + std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(const std::string& name) const { return path / name; }
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// One WARC/1.0 response record carrying an HTTP response with an HTML body.
inline std::string warc_response(const std::string& url, const std::string& html,
                                 const std::string& status = "200 OK",
                                 const std::string& content_type = "text/html") {
  std::string http = "HTTP/1.1 " + status + "\r\nContent-Type: " + content_type +
                     "\r\n\r\n" + html;
  std::string record = "WARC/1.0\r\nWARC-Type: response\r\nWARC-Target-URI: " + url +
                       "\r\nContent-Length: " + std::to_string(http.size()) + "\r\n\r\n" +
                       http + "\r\n\r\n";
  return record;
}

inline std::string warc_info(const std::string& is_part_of) {
  std::string body = "isPartOf: " + is_part_of + "\r\n";
  return "WARC/1.0\r\nWARC-Type: warcinfo\r\nContent-Length: " +
         std::to_string(body.size()) + "\r\n\r\n" + body + "\r\n\r\n";
}

}  // namespace sqkit::testing
