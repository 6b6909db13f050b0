#include <doctest.h>

#include <zlib.h>

#include <string>

#include "helpers.hpp"
#include "sqkit/ingest.hpp"

using namespace sqkit;
using namespace sqkit::testing;

namespace {

void write_gzip(const std::filesystem::path& path, const std::string& bytes) {
  gzFile out = gzopen(path.string().c_str(), "wb");
  REQUIRE(out != nullptr);
  REQUIRE(gzwrite(out, bytes.data(), static_cast<unsigned>(bytes.size())) ==
          static_cast<int>(bytes.size()));
  gzclose(out);
}

}  // namespace

TEST_CASE("WarcReader yields response records with HTML payloads") {
  TempDir dir;
  std::string warc = warc_info("CC-MAIN-2023-23") +
                     warc_response("https://example.com/a", "<html lang=\"en\"><p>A</p></html>") +
                     warc_response("https://example.com/b", "<html lang=\"en\"><p>B</p></html>");
  write_file(dir.file("corpus.warc"), warc);

  WarcReader reader(dir.file("corpus.warc"));
  auto a = reader.next();
  REQUIRE(a);
  CHECK(a->url == "https://example.com/a");
  CHECK(a->snapshot_id == "CC-MAIN-2023-23");
  CHECK(a->fetch_status == 200);
  CHECK(a->html.find("<p>A</p>") != std::string::npos);
  auto b = reader.next();
  REQUIRE(b);
  CHECK(b->url == "https://example.com/b");
  CHECK_FALSE(reader.next());
  CHECK(reader.counters().records_total == 3);
  CHECK(reader.counters().emitted == 2);
}

TEST_CASE("truncated record among three is skipped and counted") {
  TempDir dir;
  std::string good1 = warc_response("https://example.com/1", "<html><p>one</p></html>");
  std::string good2 = warc_response("https://example.com/2", "<html><p>two</p></html>");
  // Claims more bytes than the file holds: reader hits EOF inside the block.
  std::string body = "HTTP/1.1 200 OK\r\nContent-Type: text/html\r\n\r\n<html>three</html>";
  std::string truncated = "WARC/1.0\r\nWARC-Type: response\r\nWARC-Target-URI: "
                          "https://example.com/3\r\nContent-Length: 100000\r\n\r\n" + body;
  write_file(dir.file("t.warc"), good1 + good2 + truncated);

  WarcReader reader(dir.file("t.warc"));
  int pages = 0;
  while (reader.next()) pages += 1;
  CHECK(pages == 2);
  CHECK(reader.counters().malformed == 1);
  CHECK(reader.counters().records_total == 3);
}

TEST_CASE("mid-file garbage is skipped by resyncing on the version line") {
  TempDir dir;
  std::string warc = warc_response("https://example.com/1", "<html>one</html>") +
                     "garbage bytes that are not a record\r\n" +
                     warc_response("https://example.com/2", "<html>two</html>");
  write_file(dir.file("g.warc"), warc);

  WarcReader reader(dir.file("g.warc"));
  int pages = 0;
  while (reader.next()) pages += 1;
  CHECK(pages == 2);
}

TEST_CASE("non-response non-200 and non-html records are counted and skipped") {
  TempDir dir;
  std::string request = "WARC/1.0\r\nWARC-Type: request\r\nWARC-Target-URI: "
                        "https://example.com/r\r\nContent-Length: 0\r\n\r\n\r\n\r\n";
  std::string warc = request +
                     warc_response("https://example.com/404", "<html>gone</html>", "404 Not Found") +
                     warc_response("https://example.com/json", "{}", "200 OK", "application/json") +
                     warc_response("https://example.com/ok", "<html>ok</html>");
  write_file(dir.file("m.warc"), warc);

  WarcReader reader(dir.file("m.warc"));
  auto page = reader.next();
  REQUIRE(page);
  CHECK(page->url == "https://example.com/ok");
  CHECK_FALSE(reader.next());
  const IngestCounters& counters = reader.counters();
  CHECK(counters.skipped_non_response == 1);
  CHECK(counters.skipped_non_200 == 1);
  CHECK(counters.skipped_non_html == 1);
  CHECK(counters.emitted == 1);
  CHECK(counters.records_total == 4);
  CHECK(counters.skipped_total() + counters.emitted == counters.records_total);
}

TEST_CASE("content sniffing admits html without a content type") {
  TempDir dir;
  std::string body = "HTTP/1.1 200 OK\r\nServer: x\r\n\r\n<!DOCTYPE html><p>hi</p>";
  std::string record = "WARC/1.0\r\nWARC-Type: response\r\nWARC-Target-URI: "
                       "https://example.com/s\r\nContent-Length: " +
                       std::to_string(body.size()) + "\r\n\r\n" + body + "\r\n\r\n";
  write_file(dir.file("s.warc"), record);

  WarcReader reader(dir.file("s.warc"));
  auto page = reader.next();
  REQUIRE(page);
  CHECK(page->html.find("<p>hi</p>") != std::string::npos);
}

TEST_CASE("gzip and multi-member gzip are read transparently") {
  TempDir dir;
  std::string warc = warc_response("https://example.com/z1", "<html>z1</html>") +
                     warc_response("https://example.com/z2", "<html>z2</html>");
  write_gzip(dir.file("one.warc.gz"), warc);

  WarcReader one(dir.file("one.warc.gz"));
  REQUIRE(one.next());
  REQUIRE(one.next());
  CHECK_FALSE(one.next());

  // Per-record gzip members concatenated, the Common Crawl layout.
  write_gzip(dir.file("m1.gz"), warc_response("https://example.com/m1", "<html>m1</html>"));
  write_gzip(dir.file("m2.gz"), warc_response("https://example.com/m2", "<html>m2</html>"));
  std::string multi = read_file(dir.file("m1.gz")) + read_file(dir.file("m2.gz"));
  write_file(dir.file("multi.warc.gz"), multi);

  WarcReader reader(dir.file("multi.warc.gz"));
  auto a = reader.next();
  REQUIRE(a);
  CHECK(a->url == "https://example.com/m1");
  auto b = reader.next();
  REQUIRE(b);
  CHECK(b->url == "https://example.com/m2");
  CHECK_FALSE(reader.next());
}

TEST_CASE("default snapshot id falls back to the file stem") {
  TempDir dir;
  write_file(dir.file("CC-TEST-01.warc"),
             warc_response("https://example.com/x", "<html>x</html>"));
  WarcReader reader(dir.file("CC-TEST-01.warc"));
  auto page = reader.next();
  REQUIRE(page);
  CHECK(page->snapshot_id == "CC-TEST-01");
}

TEST_CASE("unreadable input is a fatal error") {
  CHECK_THROWS(WarcReader("/nonexistent/path/corpus.warc"));
}

TEST_CASE("max_record_bytes tracks the largest buffered record") {
  TempDir dir;
  std::string big(5000, 'x');
  write_file(dir.file("b.warc"),
             warc_response("https://example.com/big", "<html>" + big + "</html>"));
  WarcReader reader(dir.file("b.warc"));
  REQUIRE(reader.next());
  CHECK(reader.counters().max_record_bytes >= 5000);
  CHECK(reader.counters().max_record_bytes < 20000);
}

TEST_CASE("HtmlDirReader walks files in order with manifest urls") {
  TempDir dir;
  write_file(dir.file("a.html"), "<html lang=\"en\"><p>a</p></html>");
  write_file(dir.file("b.html"), "<html lang=\"en\"><p>b</p></html>");
  write_file(dir.file("c.html"), "<html lang=\"en\"><p>c</p></html>");
  write_file(dir.file("manifest.json"),
             R"({"urls": {"a.html": "https://site.test/a", "b.html": "https://site.test/b"},)"
             R"( "snapshot": "local-set"})");

  HtmlDirReader reader(dir.path);
  auto a = reader.next();
  REQUIRE(a);
  CHECK(a->url == "https://site.test/a");
  CHECK(a->snapshot_id == "local-set");
  auto b = reader.next();
  REQUIRE(b);
  CHECK(b->url == "https://site.test/b");
  auto c = reader.next();
  REQUIRE(c);
  // Not in the manifest: synthesized URL plus a warning count.
  CHECK(c->url.find("c.html") != std::string::npos);
  CHECK_FALSE(reader.next());
  CHECK(reader.counters().synthesized_url_warnings == 1);
  CHECK(reader.counters().emitted == 3);
}

TEST_CASE("HtmlDirReader accepts a flat manifest object") {
  TempDir dir;
  write_file(dir.file("x.html"), "<html><p>x</p></html>");
  write_file(dir.file("manifest.json"), R"({"x.html": "https://flat.test/x"})");
  HtmlDirReader reader(dir.path);
  auto page = reader.next();
  REQUIRE(page);
  CHECK(page->url == "https://flat.test/x");
}
