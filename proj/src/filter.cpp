#include "sqkit/filter.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "sqkit/html.hpp"
#include "sqkit/text.hpp"

namespace sqkit {

TopicBlocklist TopicBlocklist::defaults() {
  return from_paths({
      "/Adult",
      "/Sensitive Subjects/Accidents & Disasters",
      "/Sensitive Subjects/Death & Tragedy",
      "/Sensitive Subjects/Firearms & Weapons",
      "/Sensitive Subjects/Recreational Drugs",
      "/Sensitive Subjects/Self-Harm",
      "/Sensitive Subjects/Violence & Abuse",
      "/Sensitive Subjects/War & Conflict",
      "/Sensitive Subjects/Other",
  });
}

TopicBlocklist TopicBlocklist::from_paths(std::vector<std::string> paths) {
  TopicBlocklist list;
  for (auto& path : paths) {
    if (!starts_with(path, "/")) {
      throw std::invalid_argument("blocklist topic must begin with '/': " + path);
    }
    list.paths_.insert(std::move(path));
  }
  return list;
}

TopicBlocklist TopicBlocklist::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open blocklist: " + path.string());
  std::vector<std::string> paths;
  std::string line;
  while (std::getline(in, line)) {
    std::string entry = trim(line);
    if (entry.empty() || entry[0] == '#') continue;
    paths.push_back(entry);
  }
  return from_paths(std::move(paths));
}

void TopicBlocklist::merge(const TopicBlocklist& other) {
  paths_.insert(other.paths_.begin(), other.paths_.end());
}

WordList WordList::from_lines(const std::vector<std::string>& lines) {
  WordList list;
  for (const auto& line : lines) {
    std::string entry = to_lower(trim(line));
    if (entry.empty()) continue;
    auto tokens = split_on_any(entry, " \t");
    if (tokens.empty()) continue;
    if (tokens.size() == 1) {
      list.single_words.insert(tokens[0]);
    } else {
      list.multi_word_tuples.push_back(tokens);
    }
  }
  return list;
}

WordList WordList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open wordlist: " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return from_lines(lines);
}

bool topic_blocked(const std::vector<std::string>& topics, const TopicBlocklist& blocklist) {
  return std::any_of(topics.begin(), topics.end(),
                     [&](const std::string& topic) { return blocklist.contains(topic); });
}

bool url_blocked(const std::string& url, const WordList& wordlist,
                 const UrlBlockOptions& options) {
  std::string lowered = to_lower(url);

  // Condition 1: single word == URL token.
  std::string separators = options.split_on_slash ? "-_./" : "-_.";
  for (const auto& token : split_on_any(lowered, separators)) {
    if (wordlist.single_words.count(token)) return true;
  }

  // Condition 2: tuple joined by "-" or "_" is a substring.
  for (const auto& tuple : wordlist.multi_word_tuples) {
    for (const char* separator : {"-", "_"}) {
      if (lowered.find(join(tuple, separator)) != std::string::npos) return true;
    }
  }
  return false;
}

namespace {

class HtmlLangGate final : public LanguageGate {
 public:
  bool is_english(const PageDocument& doc) override {
    auto parsed = html::parse(doc.html);
    const html::Node* root_element = parsed.find_first("html");
    const std::string* lang = root_element ? root_element->attr("lang") : nullptr;
    if (!lang || trim(*lang).empty()) {
      warnings_ += 1;
      return false;
    }
    std::string lowered = to_lower(trim(*lang));
    return lowered == "en" || starts_with(lowered, "en-");
  }
  int64_t warnings() const override { return warnings_; }

 private:
  int64_t warnings_ = 0;
};

class AcceptAllGate final : public LanguageGate {
 public:
  bool is_english(const PageDocument&) override { return true; }
  int64_t warnings() const override { return 0; }
};

class FixtureClassifier final : public TopicClassifier {
 public:
  explicit FixtureClassifier(std::vector<TopicFixtureRule> rules) : rules_(std::move(rules)) {}

  std::vector<TopicPrediction> classify(const std::string& text) override {
    std::string lowered = to_lower(text);
    std::vector<TopicPrediction> merged;
    for (const auto& rule : rules_) {
      if (lowered.find(rule.contains) == std::string::npos) continue;
      for (const auto& prediction : rule.topics) merged.push_back(prediction);
    }
    std::stable_sort(merged.begin(), merged.end(),
                     [](const TopicPrediction& a, const TopicPrediction& b) {
                       return a.confidence > b.confidence;
                     });
    if (merged.size() > 3) merged.resize(3);
    return merged;
  }

  int64_t retry_exhausted() const override { return 0; }

 private:
  std::vector<TopicFixtureRule> rules_;
};

class HttpClassifier final : public TopicClassifier {
 public:
  explicit HttpClassifier(HttpClassifierOptions options) : options_(std::move(options)) {}

  std::vector<TopicPrediction> classify(const std::string& text) override {
    nlohmann::json body;
    body["text"] = text;
    std::string payload = body.dump();

    int backoff_ms = options_.initial_backoff_ms;
    for (int attempt = 0; attempt < options_.max_attempts; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
        backoff_ms *= 2;
      }
      httplib::Client client(options_.host, options_.port);
      auto response = client.Post(options_.path, payload, "application/json");
      if (!response || response->status != 200) continue;
      try {
        auto doc = nlohmann::json::parse(response->body);
        std::vector<TopicPrediction> out;
        for (const auto& item : doc) {
          TopicPrediction prediction;
          prediction.topic = item.at("category").get<std::string>();
          prediction.confidence = item.at("confidence").get<double>();
          out.push_back(std::move(prediction));
        }
        std::stable_sort(out.begin(), out.end(),
                         [](const TopicPrediction& a, const TopicPrediction& b) {
                           return a.confidence > b.confidence;
                         });
        if (out.size() > 3) out.resize(3);
        return out;
      } catch (const std::exception&) {
        continue;  // malformed response counts as a failed attempt
      }
    }
    std::lock_guard<std::mutex> lock(mutex_);
    retry_exhausted_ += 1;
    return {};
  }

  int64_t retry_exhausted() const override {
    std::lock_guard<std::mutex> lock(mutex_);
    return retry_exhausted_;
  }

 private:
  HttpClassifierOptions options_;
  mutable std::mutex mutex_;
  int64_t retry_exhausted_ = 0;
};

}  // namespace

std::unique_ptr<LanguageGate> make_html_lang_gate() { return std::make_unique<HtmlLangGate>(); }
std::unique_ptr<LanguageGate> make_accept_all_gate() { return std::make_unique<AcceptAllGate>(); }

bool is_english(const PageDocument& doc, LanguageGate& gate) { return gate.is_english(doc); }

std::unique_ptr<TopicClassifier> make_fixture_classifier(std::vector<TopicFixtureRule> rules) {
  for (auto& rule : rules) rule.contains = to_lower(rule.contains);
  return std::make_unique<FixtureClassifier>(std::move(rules));
}

std::unique_ptr<TopicClassifier> make_fixture_classifier(const std::filesystem::path& rules_json) {
  std::ifstream in(rules_json);
  if (!in) throw std::runtime_error("cannot open classifier rules: " + rules_json.string());
  nlohmann::json doc = nlohmann::json::parse(in);
  std::vector<TopicFixtureRule> rules;
  for (const auto& item : doc) {
    TopicFixtureRule rule;
    rule.contains = item.at("contains").get<std::string>();
    for (const auto& topic : item.at("topics")) {
      TopicPrediction prediction;
      prediction.topic = topic.at("category").get<std::string>();
      prediction.confidence = topic.at("confidence").get<double>();
      rule.topics.push_back(std::move(prediction));
    }
    rules.push_back(std::move(rule));
  }
  return make_fixture_classifier(std::move(rules));
}

std::unique_ptr<TopicClassifier> make_http_classifier(HttpClassifierOptions options) {
  return std::make_unique<HttpClassifier>(std::move(options));
}

std::vector<std::string> annotate_topics(const std::string& snippet, TopicClassifier& classifier) {
  if (trim(snippet).empty()) return {};
  std::vector<std::string> topics;
  for (const auto& prediction : classifier.classify(snippet)) {
    topics.push_back(prediction.topic);
    if (topics.size() == 3) break;
  }
  return topics;
}

}  // namespace sqkit
