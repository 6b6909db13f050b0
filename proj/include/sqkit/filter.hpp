#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sqkit/record.hpp"

namespace sqkit {

// Exact-match set of sensitive topic paths; records carrying any of them are
// withheld from release.
class TopicBlocklist {
 public:
  // The nine default sensitive paths.
  static TopicBlocklist defaults();
  // One topic path per line; blank lines and #-comments ignored.
  static TopicBlocklist load(const std::filesystem::path& path);
  static TopicBlocklist from_paths(std::vector<std::string> paths);

  bool contains(const std::string& topic) const { return paths_.count(topic) > 0; }
  const std::set<std::string>& paths() const { return paths_; }
  void merge(const TopicBlocklist& other);

 private:
  std::set<std::string> paths_;
};

// Lowercased blocked vocabulary: single tokens plus multi-word tuples.
struct WordList {
  std::set<std::string> single_words;
  std::vector<std::vector<std::string>> multi_word_tuples;

  // Plain text, one entry per line; multi-word entries space-separated.
  static WordList load(const std::filesystem::path& path);
  static WordList from_lines(const std::vector<std::string>& lines);
};

bool topic_blocked(const std::vector<std::string>& topics, const TopicBlocklist& blocklist);

struct UrlBlockOptions {
  // Extra "/" splitting for condition-1 tokens; off by default so token
  // boundaries stay exactly "-", "_", ".".
  bool split_on_slash = false;
};

// Condition 1: some single word equals a token of the URL split on -_.
// Condition 2: some tuple joined by "-" or "_" occurs as a substring.
// Both case-insensitive.
bool url_blocked(const std::string& url, const WordList& wordlist,
                 const UrlBlockOptions& options = {});

// Language gate contract. Implementations must be safe to call from
// multiple threads.
class LanguageGate {
 public:
  virtual ~LanguageGate() = default;
  // True when the page is (declared or detected) English.
  virtual bool is_english(const PageDocument& doc) = 0;
  // Gate failures (missing signal, backend error) count here and read false.
  virtual int64_t warnings() const = 0;
};

// Fixture gate: <html lang> attribute with an "en" prefix ("en", "en-US").
// Missing/empty attribute → false + warning.
std::unique_ptr<LanguageGate> make_html_lang_gate();
// Accepts everything; for corpora already known to be English.
std::unique_ptr<LanguageGate> make_accept_all_gate();

bool is_english(const PageDocument& doc, LanguageGate& gate);

struct TopicPrediction {
  std::string topic;       // path beginning with "/"
  double confidence = 0;   // descending within one response
};

// Topic classifier contract: ≤3 (topic, confidence) pairs, descending
// confidence. Thread-safe.
class TopicClassifier {
 public:
  virtual ~TopicClassifier() = default;
  virtual std::vector<TopicPrediction> classify(const std::string& text) = 0;
  // Calls whose retries were exhausted; those return empty topic lists.
  virtual int64_t retry_exhausted() const = 0;
};

// Table-driven fixture: rule file/object maps a lowercase substring to a
// topic list; first N matching rules apply, truncated to 3 by confidence.
struct TopicFixtureRule {
  std::string contains;  // lowercase substring of the snippet
  std::vector<TopicPrediction> topics;
};

std::unique_ptr<TopicClassifier> make_fixture_classifier(std::vector<TopicFixtureRule> rules);
std::unique_ptr<TopicClassifier> make_fixture_classifier(const std::filesystem::path& rules_json);

// HTTP classifier: POST {"text": ...} → JSON [{"category","confidence"}].
// Retries with exponential backoff; exhausted retries → empty list.
struct HttpClassifierOptions {
  std::string host = "127.0.0.1";
  int port = 0;
  std::string path = "/classify";
  int max_attempts = 3;
  int initial_backoff_ms = 100;  // doubles per retry
};

std::unique_ptr<TopicClassifier> make_http_classifier(HttpClassifierOptions options);

// ≤3 topic paths for the snippet; empty snippet skips the classifier.
std::vector<std::string> annotate_topics(const std::string& snippet, TopicClassifier& classifier);

}  // namespace sqkit
