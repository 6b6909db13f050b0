#include <doctest.h>

#include <stdexcept>

#include "sqkit/hash.hpp"
#include "sqkit/rng.hpp"
#include "sqkit/text.hpp"
#include "sqkit/url.hpp"

using namespace sqkit;

TEST_CASE("collapse_whitespace squeezes runs and trims") {
  CHECK(collapse_whitespace("  a \t\n b  ") == "a b");
  CHECK(collapse_whitespace("") == "");
  CHECK(collapse_whitespace("\n\t ") == "");
  CHECK(collapse_whitespace("one two") == "one two");
  // U+00A0 counts as whitespace.
  CHECK(collapse_whitespace("a\xc2\xa0\xc2\xa0m") == "a m");
}

TEST_CASE("sanitize_utf8 passes valid text and replaces broken bytes") {
  bool lossy = false;
  CHECK(sanitize_utf8("plain ascii", &lossy) == "plain ascii");
  CHECK_FALSE(lossy);
  CHECK(sanitize_utf8("caf\xc3\xa9", &lossy) == "caf\xc3\xa9");
  CHECK_FALSE(lossy);

  std::string bad = "a\xffz";
  std::string fixed = sanitize_utf8(bad, &lossy);
  CHECK(lossy);
  CHECK(fixed == "a\xef\xbf\xbdz");  // U+FFFD

  // Truncated multi-byte sequence at end of input.
  lossy = false;
  CHECK(sanitize_utf8("ab\xc3", &lossy) == "ab\xef\xbf\xbd");
  CHECK(lossy);
}

TEST_CASE("split helpers") {
  CHECK(split_on_any("a-b_c.d", "-_.") == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(split_on_any("--a--", "-") == std::vector<std::string>{"a"});
  CHECK(split_on_any("", "-") == std::vector<std::string>{});
  CHECK(split("a,,b", ',') == std::vector<std::string>{"a", "", "b"});
  CHECK(join({"a", "b"}, "-") == "a-b");
  CHECK(trim("  x ") == "x");
  CHECK(to_lower("MiXeD") == "mixed");
  CHECK(icontains("Hello World", "lo w"));
  CHECK_FALSE(icontains("Hello", "xyz"));
  CHECK(starts_with("abc", "ab"));
  CHECK(ends_with("abc", "bc"));
}

TEST_CASE("parse_url decomposes the pieces") {
  auto url = parse_url("HTTPS://User.Example.COM:8443/a/b?q=1#frag");
  REQUIRE(url);
  CHECK(url->scheme == "https");
  CHECK(url->host == "user.example.com");
  CHECK(url->port == "8443");
  CHECK(url->path == "/a/b");
  CHECK(url->query == "q=1");
  CHECK(url->fragment == "frag");
  CHECK(url->path_segments() == std::vector<std::string>{"a", "b"});

  auto bare = parse_url("http://example.com");
  REQUIRE(bare);
  CHECK(bare->path == "");
  CHECK(bare->path_segments().empty());

  CHECK_FALSE(parse_url("not a url"));
}

TEST_CASE("host_matches accepts the domain and subdomains only") {
  CHECK(host_matches("twitter.com", "twitter.com"));
  CHECK(host_matches("www.twitter.com", "twitter.com"));
  CHECK_FALSE(host_matches("eviltwitter.com", "twitter.com"));
  CHECK_FALSE(host_matches("twitter.com.evil.io", "twitter.com"));
}

TEST_CASE("extract_domain lowers and strips one www") {
  CHECK(extract_domain("https://WWW.cnn.com/x") == "cnn.com");
  CHECK(extract_domain("https://finance.yahoo.com/a") == "finance.yahoo.com");
  CHECK(extract_domain("https://www.www.example.com/") == "www.example.com");
  CHECK_THROWS_AS(extract_domain("nohost"), std::invalid_argument);
}

TEST_CASE("sha256_hex matches the published test vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("quote_id hashes post URL then page URL") {
  std::string id = quote_id("https://twitter.com/a/status/1", "https://example.com/p");
  CHECK(id == sha256_hex("https://twitter.com/a/status/1\nhttps://example.com/p"));
  CHECK(id.size() == 64);
  // Pair-sensitive: same post on a different page gets a different id.
  CHECK(id != quote_id("https://twitter.com/a/status/1", "https://example.com/q"));
  // Deterministic.
  CHECK(id == quote_id("https://twitter.com/a/status/1", "https://example.com/p"));
}

TEST_CASE("SplitMix64 is deterministic and bounded values are in range") {
  SplitMix64 a(42);
  SplitMix64 b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  SplitMix64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    CHECK(rng.bounded(10) < 10);
    double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }

  std::vector<int> x{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<int> y = x;
  SplitMix64 r1(5);
  SplitMix64 r2(5);
  r1.shuffle(x);
  r2.shuffle(y);
  CHECK(x == y);
}
