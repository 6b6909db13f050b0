#include "sqkit/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sqkit/classify.hpp"
#include "sqkit/record_io.hpp"
#include "sqkit/text.hpp"

namespace sqkit {

namespace {

void read_string(const nlohmann::json& doc, const char* key, std::string& into) {
  if (doc.contains(key)) into = doc.at(key).get<std::string>();
}

template <typename T>
void read_number(const nlohmann::json& doc, const char* key, T& into) {
  if (doc.contains(key)) into = doc.at(key).get<T>();
}

void read_bool(const nlohmann::json& doc, const char* key, bool& into) {
  if (doc.contains(key)) into = doc.at(key).get<bool>();
}

void reject_unknown_keys(const nlohmann::json& doc, const std::set<std::string>& known,
                         const std::string& where) {
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!known.count(it.key())) {
      throw std::invalid_argument("unknown config key " + where + it.key());
    }
  }
}

std::optional<std::string> env(const char* name) {
  const char* value = std::getenv(name);
  if (!value) return std::nullopt;
  return std::string(value);
}

bool env_bool(const std::string& value) {
  std::string lowered = to_lower(value);
  if (lowered == "1" || lowered == "true" || lowered == "yes" || lowered == "on") return true;
  if (lowered == "0" || lowered == "false" || lowered == "no" || lowered == "off") return false;
  throw std::invalid_argument("boolean environment value expected, got: " + value);
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw std::runtime_error("cannot open config: " + json_path.string());
  nlohmann::json doc = nlohmann::json::parse(in);

  PipelineConfig config;
  reject_unknown_keys(doc,
                      {"patterns", "blocklist", "wordlist", "tau", "language_gate",
                       "topic_classifier", "model_backend", "policy", "cot", "fewshots",
                       "role_questions", "workers", "seed", "format", "min_support", "top_k",
                       "scientific"},
                      "");
  read_string(doc, "patterns", config.patterns_path);
  read_string(doc, "blocklist", config.blocklist_path);
  read_string(doc, "wordlist", config.wordlist_path);
  read_number(doc, "tau", config.tau);
  read_string(doc, "language_gate", config.language_gate);
  read_string(doc, "policy", config.policy);
  read_bool(doc, "cot", config.cot);
  read_string(doc, "fewshots", config.fewshots_path);
  read_string(doc, "role_questions", config.role_questions_path);
  read_number(doc, "workers", config.workers);
  read_number(doc, "seed", config.seed);
  read_string(doc, "format", config.format);
  read_number(doc, "min_support", config.min_support);
  read_number(doc, "top_k", config.top_k);
  read_bool(doc, "scientific", config.scientific);

  if (doc.contains("topic_classifier")) {
    const auto& spec = doc.at("topic_classifier");
    reject_unknown_keys(spec, {"kind", "rules", "host", "port", "path"}, "topic_classifier.");
    read_string(spec, "kind", config.topic_classifier.kind);
    read_string(spec, "rules", config.topic_classifier.rules_path);
    read_string(spec, "host", config.topic_classifier.host);
    read_number(spec, "port", config.topic_classifier.port);
    read_string(spec, "path", config.topic_classifier.path);
  }
  if (doc.contains("model_backend")) {
    const auto& spec = doc.at("model_backend");
    reject_unknown_keys(spec, {"kind", "rules", "host", "port", "path", "max_tokens"},
                        "model_backend.");
    read_string(spec, "kind", config.model_backend.kind);
    read_string(spec, "rules", config.model_backend.rules_path);
    read_string(spec, "host", config.model_backend.host);
    read_number(spec, "port", config.model_backend.port);
    read_string(spec, "path", config.model_backend.path);
    read_number(spec, "max_tokens", config.model_backend.max_tokens);
  }
  return config;
}

void PipelineConfig::apply_env() {
  if (auto value = env("SQK_PATTERNS")) patterns_path = *value;
  if (auto value = env("SQK_BLOCKLIST")) blocklist_path = *value;
  if (auto value = env("SQK_WORDLIST")) wordlist_path = *value;
  if (auto value = env("SQK_TAU")) tau = std::stoi(*value);
  if (auto value = env("SQK_POLICY")) policy = *value;
  if (auto value = env("SQK_COT")) cot = env_bool(*value);
  if (auto value = env("SQK_FEWSHOTS")) fewshots_path = *value;
  if (auto value = env("SQK_WORKERS")) workers = std::stoi(*value);
  if (auto value = env("SQK_SEED")) seed = std::stoull(*value);
  if (auto value = env("SQK_FORMAT")) format = *value;
  if (auto value = env("SQK_MIN_SUPPORT")) min_support = std::stoll(*value);
  if (auto value = env("SQK_TOP_K")) top_k = std::stoll(*value);
}

void PipelineConfig::validate() const {
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (!policy_from_name(policy)) throw std::invalid_argument("unknown policy: " + policy);
  record_format_from_string(format);  // throws on bad value
  if (language_gate != "html-lang" && language_gate != "always") {
    throw std::invalid_argument("unknown language_gate: " + language_gate);
  }
  // Completeness of a backend spec (rule files, ports) is checked by the
  // subcommand that actually instantiates it; here only the kinds.
  const std::string& classifier_kind = topic_classifier.kind;
  if (classifier_kind != "none" && classifier_kind != "fixture" && classifier_kind != "http") {
    throw std::invalid_argument("unknown topic_classifier.kind: " + classifier_kind);
  }
  if (model_backend.kind != "fixture" && model_backend.kind != "http") {
    throw std::invalid_argument("unknown model_backend.kind: " + model_backend.kind);
  }
  if (min_support < 0) throw std::invalid_argument("min_support must be >= 0");

  for (const std::string* path :
       {&patterns_path, &blocklist_path, &wordlist_path, &fewshots_path, &role_questions_path,
        &topic_classifier.rules_path, &model_backend.rules_path}) {
    if (!path->empty() && !std::filesystem::exists(*path)) {
      throw std::invalid_argument("configured file does not exist: " + *path);
    }
  }
}

}  // namespace sqkit
