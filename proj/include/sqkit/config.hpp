#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace sqkit {

// Model backend selection for classification.
struct ModelBackendSpec {
  std::string kind = "fixture";  // fixture | http
  std::string rules_path;        // fixture rule file
  std::string host = "127.0.0.1";
  int port = 0;
  std::string path = "/generate";
  int max_tokens = 256;
};

// Topic classifier selection for context annotation.
struct TopicClassifierSpec {
  std::string kind = "none";  // none | fixture | http
  std::string rules_path;
  std::string host = "127.0.0.1";
  int port = 0;
  std::string path = "/classify";
};

// All knobs a run needs; a recorded config + seed reproduces outputs
// byte-for-byte. Sources are layered: built-in defaults, then the JSON
// config file, then SQK_* environment variables, then CLI flags.
struct PipelineConfig {
  std::string patterns_path;   // empty = built-in pattern registry
  std::string blocklist_path;  // empty = built-in sensitive topics
  std::string wordlist_path;   // empty = URL word filter off
  int tau = 300;
  std::string language_gate = "html-lang";  // html-lang | always
  TopicClassifierSpec topic_classifier;
  ModelBackendSpec model_backend;
  std::string policy = "greedy";  // greedy | self_consistency | persistence
  bool cot = false;
  std::string fewshots_path;        // empty = shipped defaults
  std::string role_questions_path;  // empty = shipped questions
  int workers = 1;
  uint64_t seed = 0;
  std::string format = "jsonl";  // jsonl | csv
  int64_t min_support = 5;
  int64_t top_k = 3;
  bool scientific = false;

  // Parses the JSON config document. Unknown keys are an error so typos
  // fail fast.
  static PipelineConfig load(const std::filesystem::path& json_path);

  // SQK_-prefixed environment overrides (SQK_TAU, SQK_SEED, SQK_POLICY,
  // SQK_COT, SQK_WORKERS, SQK_FORMAT, SQK_MIN_SUPPORT, SQK_TOP_K,
  // SQK_PATTERNS, SQK_BLOCKLIST, SQK_WORDLIST, SQK_FEWSHOTS).
  void apply_env();

  // Throws std::invalid_argument on any bad value; called before any work.
  void validate() const;
};

}  // namespace sqkit
