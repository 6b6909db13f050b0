#include "sqkit/classify.hpp"

#include <chrono>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "sqkit/extractor.hpp"
#include "sqkit/text.hpp"

namespace sqkit {

namespace {

class FixtureBackend final : public ModelBackend {
 public:
  FixtureBackend(std::vector<BackendRule> rules, std::string default_response)
      : rules_(std::move(rules)), default_response_(std::move(default_response)) {}

  std::string generate(const std::string& prompt, double temperature, uint64_t seed) override {
    for (const auto& rule : rules_) {
      if (rule.temperature && *rule.temperature != temperature) continue;
      if (rule.seed && *rule.seed != seed) continue;
      bool all_found = true;
      for (const auto& needle : rule.contains) {
        if (prompt.find(needle) == std::string::npos) {
          all_found = false;
          break;
        }
      }
      if (all_found) return rule.response;
    }
    return default_response_;
  }

 private:
  std::vector<BackendRule> rules_;
  std::string default_response_;
};

class HttpBackend final : public ModelBackend {
 public:
  explicit HttpBackend(HttpBackendOptions options) : options_(std::move(options)) {}

  std::string generate(const std::string& prompt, double temperature, uint64_t) override {
    nlohmann::json body;
    body["prompt"] = prompt;
    body["temperature"] = temperature;
    body["max_tokens"] = options_.max_tokens;
    std::string payload = body.dump();

    std::string last_error = "no attempt made";
    int backoff_ms = options_.initial_backoff_ms;
    for (int attempt = 0; attempt < options_.max_attempts; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
        backoff_ms *= 2;
      }
      httplib::Client client(options_.host, options_.port);
      auto response = client.Post(options_.path, payload, "application/json");
      if (!response) {
        last_error = "transport error: " + httplib::to_string(response.error());
        continue;
      }
      if (response->status != 200) {
        last_error = "http status " + std::to_string(response->status);
        continue;
      }
      try {
        auto doc = nlohmann::json::parse(response->body);
        return doc.at("text").get<std::string>();
      } catch (const std::exception& err) {
        last_error = std::string("bad response body: ") + err.what();
      }
    }
    throw BackendError("backend failed after " + std::to_string(options_.max_attempts) +
                       " attempts: " + last_error);
  }

 private:
  HttpBackendOptions options_;
};

}  // namespace

std::unique_ptr<ModelBackend> make_fixture_backend(std::vector<BackendRule> rules,
                                                   std::string default_response) {
  return std::make_unique<FixtureBackend>(std::move(rules), std::move(default_response));
}

std::unique_ptr<ModelBackend> make_fixture_backend(const std::filesystem::path& rules_json) {
  std::ifstream in(rules_json);
  if (!in) throw std::runtime_error("cannot open backend rules: " + rules_json.string());
  nlohmann::json doc = nlohmann::json::parse(in);
  std::vector<BackendRule> rules;
  std::string default_response;
  for (const auto& item : doc) {
    if (item.contains("default")) {
      default_response = item.at("default").get<std::string>();
      continue;
    }
    BackendRule rule;
    for (const auto& needle : item.at("contains")) {
      rule.contains.push_back(needle.get<std::string>());
    }
    if (item.contains("temperature")) rule.temperature = item.at("temperature").get<double>();
    if (item.contains("seed")) rule.seed = item.at("seed").get<uint64_t>();
    rule.response = item.at("response").get<std::string>();
    rules.push_back(std::move(rule));
  }
  return make_fixture_backend(std::move(rules), std::move(default_response));
}

std::unique_ptr<ModelBackend> make_http_backend(HttpBackendOptions options) {
  return std::make_unique<HttpBackend>(std::move(options));
}

std::string policy_name(Policy policy) {
  switch (policy) {
    case Policy::Greedy: return "greedy";
    case Policy::SelfConsistency: return "self_consistency";
    case Policy::Persistence: return "persistence";
  }
  return "";
}

std::optional<Policy> policy_from_name(const std::string& name) {
  if (name == "greedy") return Policy::Greedy;
  if (name == "self_consistency" || name == "sc") return Policy::SelfConsistency;
  if (name == "persistence") return Policy::Persistence;
  return std::nullopt;
}

VerdictValue vote_self_consistency(const std::vector<VerdictValue>& trace) {
  int yes = 0;
  int no = 0;
  for (VerdictValue value : trace) {
    if (value == VerdictValue::Yes) {
      yes += 1;
    } else {
      no += 1;  // unparseable counts as no
    }
  }
  if (yes > no) return VerdictValue::Yes;
  if (no > yes) return VerdictValue::No;
  // Tie: the greedy (temperature-0) call decides.
  return trace.empty() || trace[0] != VerdictValue::Yes ? VerdictValue::No : VerdictValue::Yes;
}

VerdictValue vote_persistence(const std::vector<VerdictValue>& trace) {
  if (trace.empty()) return VerdictValue::No;
  for (VerdictValue value : trace) {
    if (value != VerdictValue::Yes) return VerdictValue::No;
  }
  return VerdictValue::Yes;
}

PromptInstance instance_from_record(const QuoteRecord& record) {
  PromptInstance instance;
  instance.url = record.common_crawl_url;
  instance.post_url = record.social_post_url;
  instance.handle = handle_from_profile(record.social_user_profile);
  instance.snippet = record.context_snippet;
  return instance;
}

Verdict classify_role(const QuoteRecord& record, Role role, ModelBackend& backend,
                      const ClassifyOptions& options) {
  PromptSpec spec;
  spec.role = role;
  spec.include_cot = options.include_cot;
  spec.ablation_mask = options.ablation_mask;
  auto fewshot_it = options.fewshots.find(role);
  spec.fewshot_examples =
      fewshot_it != options.fewshots.end() ? fewshot_it->second : default_fewshots(role);
  spec.instance = instance_from_record(record);
  std::string prompt = render_prompt(spec);

  Verdict verdict;
  auto call = [&](double temperature, uint64_t seed) {
    std::string completion = backend.generate(prompt, temperature, seed);
    verdict.call_trace.push_back(parse_verdict(completion));
    verdict.completions.push_back(std::move(completion));
  };

  call(0.0, options.seed);  // greedy call
  if (options.policy == Policy::Greedy) {
    verdict.value = verdict.call_trace[0];
    return verdict;
  }

  for (int i = 1; i <= options.sample_calls; ++i) {
    call(options.sample_temperature, options.seed + static_cast<uint64_t>(i));
  }
  verdict.value = options.policy == Policy::SelfConsistency
                      ? vote_self_consistency(verdict.call_trace)
                      : vote_persistence(verdict.call_trace);
  return verdict;
}

QuoteClassification classify_quote(const QuoteRecord& record, ModelBackend& backend,
                                   const ClassifyOptions& options) {
  QuoteClassification result;
  for (Role role : kAllRoles) {
    Verdict verdict = classify_role(record, role, backend, options);
    if (verdict.value == VerdictValue::Yes) result.roles.insert(role);
    result.verdicts[role] = std::move(verdict);
  }
  return result;
}

std::vector<Prediction> predictions_from(const std::string& quote_id,
                                         const QuoteClassification& result, Policy policy) {
  std::vector<Prediction> out;
  for (Role role : kAllRoles) {
    const Verdict& verdict = result.verdicts.at(role);
    Prediction prediction;
    prediction.quote_id = quote_id;
    prediction.role = role;
    prediction.policy = policy;
    prediction.verdict = verdict.value;
    prediction.call_trace = verdict.call_trace;
    out.push_back(std::move(prediction));
  }
  return out;
}

void write_predictions(const std::vector<Prediction>& predictions, std::ostream& out) {
  for (const auto& prediction : predictions) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    row["quote_id"] = prediction.quote_id;
    row["role"] = role_name(prediction.role);
    row["policy"] = policy_name(prediction.policy);
    row["verdict"] = verdict_value_name(prediction.verdict);
    nlohmann::ordered_json trace = nlohmann::ordered_json::array();
    for (VerdictValue value : prediction.call_trace) trace.push_back(verdict_value_name(value));
    row["call_trace"] = trace;
    out << row.dump() << "\n";
  }
}

void write_predictions(const std::vector<Prediction>& predictions,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  write_predictions(predictions, out);
}

std::vector<Prediction> read_predictions(std::istream& in) {
  std::vector<Prediction> out;
  std::string line;
  int64_t index = 0;
  while (std::getline(in, line)) {
    index += 1;
    if (trim(line).empty()) continue;
    auto fail = [&](const std::string& what) {
      throw std::runtime_error("prediction line " + std::to_string(index) + ": " + what);
    };
    nlohmann::json row = nlohmann::json::parse(line);
    Prediction prediction;
    prediction.quote_id = row.at("quote_id").get<std::string>();
    auto role = role_from_name(row.at("role").get<std::string>());
    if (!role) fail("unknown role");
    prediction.role = *role;
    auto policy = policy_from_name(row.at("policy").get<std::string>());
    if (!policy) fail("unknown policy");
    prediction.policy = *policy;
    auto verdict = verdict_value_from_name(row.at("verdict").get<std::string>());
    if (!verdict) fail("unknown verdict");
    prediction.verdict = *verdict;
    if (row.contains("call_trace")) {
      for (const auto& item : row.at("call_trace")) {
        auto value = verdict_value_from_name(item.get<std::string>());
        if (!value) fail("unknown call_trace verdict");
        prediction.call_trace.push_back(*value);
      }
    }
    out.push_back(std::move(prediction));
  }
  return out;
}

std::vector<Prediction> read_predictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open predictions: " + path.string());
  return read_predictions(in);
}

std::map<std::string, std::set<Role>> prediction_role_sets(
    const std::vector<Prediction>& predictions) {
  std::map<std::string, std::set<Role>> out;
  for (const auto& prediction : predictions) {
    auto& roles = out[prediction.quote_id];  // quote present even with no yes verdicts
    if (prediction.verdict == VerdictValue::Yes) roles.insert(prediction.role);
  }
  return out;
}

const std::vector<AblationArm>& ablation_arms() {
  static const std::vector<AblationArm> arms = {
      {"None", std::nullopt},
      {"URL", PromptField::Url},
      {"HANDLE", PromptField::Handle},
      {"POST_URL", PromptField::PostUrl},
      {"SNIPPET", PromptField::Snippet},
  };
  return arms;
}

std::map<std::string, std::vector<Prediction>> run_ablation(
    const std::vector<QuoteRecord>& records, ModelBackend& backend,
    const ClassifyOptions& options) {
  std::map<std::string, std::vector<Prediction>> out;
  for (const auto& arm : ablation_arms()) {
    ClassifyOptions arm_options = options;
    arm_options.ablation_mask.clear();
    if (arm.removed) arm_options.ablation_mask.insert(*arm.removed);
    std::vector<Prediction> predictions;
    for (const auto& record : records) {
      auto result = classify_quote(record, backend, arm_options);
      auto rows = predictions_from(record.id, result, arm_options.policy);
      predictions.insert(predictions.end(), rows.begin(), rows.end());
    }
    out[arm.label] = std::move(predictions);
  }
  return out;
}

}  // namespace sqkit
