#include <doctest.h>

#include <atomic>
#include <memory>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "sqkit/filter.hpp"

using namespace sqkit;
using namespace sqkit::testing;

TEST_CASE("topic blocklist defaults cover the nine sensitive paths") {
  TopicBlocklist blocklist = TopicBlocklist::defaults();
  CHECK(blocklist.paths().size() == 9);
  CHECK(blocklist.contains("/Adult"));
  CHECK(blocklist.contains("/Sensitive Subjects/Self-Harm"));
  CHECK(blocklist.contains("/Sensitive Subjects/War & Conflict"));
  CHECK_FALSE(blocklist.contains("/News/Sports News"));

  CHECK(topic_blocked({"/News/Sports News", "/Adult"}, blocklist));
  CHECK_FALSE(topic_blocked({"/News/Sports News"}, blocklist));
  CHECK_FALSE(topic_blocked({}, blocklist));
  // Exact path matching: parents and children do not match each other.
  CHECK_FALSE(topic_blocked({"/Sensitive Subjects"}, blocklist));
  CHECK_FALSE(topic_blocked({"/Adult/Something"}, blocklist));
}

TEST_CASE("blocklist file loading skips comments and blanks") {
  TempDir dir;
  write_file(dir.file("topics.txt"), "# comment\n/Adult\n\n/Custom/Topic\n");
  TopicBlocklist blocklist = TopicBlocklist::load(dir.file("topics.txt"));
  CHECK(blocklist.paths().size() == 2);
  CHECK(blocklist.contains("/Custom/Topic"));
  CHECK_THROWS(TopicBlocklist::from_paths({"no-slash"}));
}

TEST_CASE("wordlist splits single words from tuples and lowercases") {
  WordList list = WordList::from_lines({"BadWord", "very bad phrase", " explicit  clip "});
  CHECK(list.single_words.count("badword") == 1);
  REQUIRE(list.multi_word_tuples.size() == 2);
  CHECK(list.multi_word_tuples[0] == std::vector<std::string>{"very", "bad", "phrase"});
  CHECK(list.multi_word_tuples[1] == std::vector<std::string>{"explicit", "clip"});
}

TEST_CASE("condition 1 blocks urls with a token equal to a blocked word") {
  WordList list = WordList::from_lines({"badword"});
  // Tokens split on "-", "_", ".".
  CHECK(url_blocked("https://example.com/a-badword-b", list));
  CHECK(url_blocked("https://example.com/x_badword_y", list));
  CHECK(url_blocked("https://sub.badword.example.com/page", list));
  CHECK(url_blocked("https://example.com/clip.badword", list));
  // Without "/" splitting the scheme stays glued to the first host label.
  CHECK_FALSE(url_blocked("https://badword.example.com/page", list));
  // Case-insensitive.
  CHECK(url_blocked("https://example.com/a-BADWORD-b", list));
  // Substrings are not token matches.
  CHECK_FALSE(url_blocked("https://example.com/notbadwordhere", list));
  CHECK_FALSE(url_blocked("https://example.com/badwords", list));
  CHECK_FALSE(url_blocked("https://example.com/clean-page", list));
}

TEST_CASE("slash splitting for condition 1 is opt-in") {
  WordList list = WordList::from_lines({"badword"});
  // Whole path segment: only a token when "/" splitting is on.
  CHECK_FALSE(url_blocked("https://example.com/badword/page", list));
  UrlBlockOptions options;
  options.split_on_slash = true;
  CHECK(url_blocked("https://example.com/badword/page", list, options));
  CHECK(url_blocked("https://badword.example.com/page", list, options));
}

TEST_CASE("condition 2 blocks joined tuples as substrings") {
  WordList list = WordList::from_lines({"very bad phrase"});
  CHECK(url_blocked("https://example.com/a-very-bad-phrase-b", list));
  CHECK(url_blocked("https://example.com/x_very_bad_phrase", list));
  CHECK(url_blocked("https://example.com/prefixvery-bad-phrasesuffix", list));  // substring
  CHECK(url_blocked("https://example.com/VERY-BAD-PHRASE", list));
  // Mixed separators inside one tuple join do not match.
  CHECK_FALSE(url_blocked("https://example.com/very-bad_phrase", list));
  // Words present but not joined.
  CHECK_FALSE(url_blocked("https://example.com/very/bad/phrase", list));
  CHECK_FALSE(url_blocked("https://example.com/verybadphrase", list));
}

TEST_CASE("empty wordlist blocks nothing") {
  WordList list;
  CHECK_FALSE(url_blocked("https://example.com/anything-at-all", list));
}

TEST_CASE("html-lang gate accepts english prefixes only") {
  auto gate = make_html_lang_gate();
  PageDocument en;
  en.html = "<html lang=\"en\"><body>x</body></html>";
  PageDocument en_us;
  en_us.html = "<html lang=\"en-US\"><body>x</body></html>";
  PageDocument fr;
  fr.html = "<html lang=\"fr\"><body>x</body></html>";
  PageDocument missing;
  missing.html = "<html><body>x</body></html>";
  PageDocument enx;
  enx.html = "<html lang=\"enx\"><body>x</body></html>";

  CHECK(gate->is_english(en));
  CHECK(gate->is_english(en_us));
  CHECK_FALSE(gate->is_english(fr));
  CHECK(gate->warnings() == 0);
  CHECK_FALSE(gate->is_english(missing));
  CHECK(gate->warnings() == 1);
  CHECK_FALSE(gate->is_english(enx));

  auto all = make_accept_all_gate();
  CHECK(all->is_english(fr));
  CHECK(all->is_english(missing));
  CHECK(all->warnings() == 0);
}

TEST_CASE("fixture classifier applies substring rules with a 3-topic cap") {
  std::vector<TopicFixtureRule> rules;
  rules.push_back({"steelers", {{"/News/Sports News", 0.9}, {"/Sports/Team Sports", 0.7}}});
  rules.push_back({"stadium", {{"/Travel/Venues", 0.8}, {"/Hobbies/Events", 0.6}}});
  auto classifier = make_fixture_classifier(std::move(rules));

  auto topics = classifier->classify("The Steelers opened the stadium gates early.");
  REQUIRE(topics.size() == 3);  // merged, confidence-sorted, truncated
  CHECK(topics[0].topic == "/News/Sports News");
  CHECK(topics[1].topic == "/Travel/Venues");
  CHECK(topics[2].topic == "/Sports/Team Sports");

  CHECK(classifier->classify("nothing relevant").empty());
  CHECK(classifier->retry_exhausted() == 0);
}

TEST_CASE("annotate_topics skips empty snippets and caps at 3") {
  std::vector<TopicFixtureRule> rules;
  rules.push_back({"x", {{"/A/B", 0.9}, {"/C/D", 0.8}, {"/E/F", 0.7}, {"/G/H", 0.6}}});
  auto classifier = make_fixture_classifier(std::move(rules));
  CHECK(annotate_topics("", *classifier).empty());
  CHECK(annotate_topics("   ", *classifier).empty());
  auto topics = annotate_topics("x marks the spot", *classifier);
  CHECK(topics == std::vector<std::string>{"/A/B", "/C/D", "/E/F"});
}

TEST_CASE("http classifier round-trips the documented contract") {
  httplib::Server server;
  std::atomic<int> hits{0};
  server.Post("/classify", [&](const httplib::Request& req, httplib::Response& res) {
    hits += 1;
    auto body = nlohmann::json::parse(req.body);
    REQUIRE(body.contains("text"));
    nlohmann::json out = nlohmann::json::array();
    if (body.at("text").get<std::string>().find("sports") != std::string::npos) {
      out.push_back({{"category", "/News/Sports News"}, {"confidence", 0.95}});
    }
    res.set_content(out.dump(), "application/json");
  });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  HttpClassifierOptions options;
  options.port = port;
  options.initial_backoff_ms = 1;
  auto classifier = make_http_classifier(options);
  auto topics = classifier->classify("sports news text");
  REQUIRE(topics.size() == 1);
  CHECK(topics[0].topic == "/News/Sports News");
  CHECK(topics[0].confidence == doctest::Approx(0.95));
  CHECK(classifier->classify("irrelevant").empty());
  CHECK(classifier->retry_exhausted() == 0);
  CHECK(hits == 2);

  server.stop();
  thread.join();
}

TEST_CASE("http classifier retries then succeeds") {
  httplib::Server server;
  std::atomic<int> hits{0};
  server.Post("/classify", [&](const httplib::Request&, httplib::Response& res) {
    if (hits.fetch_add(1) == 0) {
      res.status = 500;
      return;
    }
    res.set_content(R"([{"category": "/A/B", "confidence": 0.5}])", "application/json");
  });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  HttpClassifierOptions options;
  options.port = port;
  options.initial_backoff_ms = 1;
  auto classifier = make_http_classifier(options);
  auto topics = classifier->classify("text");
  REQUIRE(topics.size() == 1);
  CHECK(hits == 2);
  CHECK(classifier->retry_exhausted() == 0);

  server.stop();
  thread.join();
}

TEST_CASE("http classifier exhausts retries into an empty list and a counter") {
  HttpClassifierOptions options;
  options.port = 1;  // nothing listens here
  options.max_attempts = 2;
  options.initial_backoff_ms = 1;
  auto classifier = make_http_classifier(options);
  CHECK(classifier->classify("text").empty());
  CHECK(classifier->retry_exhausted() == 1);
  CHECK(classifier->classify("more").empty());
  CHECK(classifier->retry_exhausted() == 2);
}
