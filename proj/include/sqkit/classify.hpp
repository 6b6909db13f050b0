#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqkit/prompt.hpp"
#include "sqkit/record.hpp"

namespace sqkit {

// Text-generation backend contract. generate() returns the completion text;
// transport failures (after any internal retries) throw BackendError.
// Implementations must be safe to call from multiple threads.
class ModelBackend {
 public:
  virtual ~ModelBackend() = default;
  virtual std::string generate(const std::string& prompt, double temperature,
                               uint64_t seed) = 0;
};

struct BackendError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One fixture rule: fires when every `contains` string occurs in the prompt
// and the optional temperature/seed constraints match. First rule wins.
struct BackendRule {
  std::vector<std::string> contains;
  std::optional<double> temperature;
  std::optional<uint64_t> seed;
  std::string response;
};

// Pure function of (prompt, temperature, seed); the test/offline backend.
std::unique_ptr<ModelBackend> make_fixture_backend(std::vector<BackendRule> rules,
                                                   std::string default_response = "");
// Rule file: JSON array of {contains: [...], temperature?, seed?, response}
// plus optional trailing {"default": text} object.
std::unique_ptr<ModelBackend> make_fixture_backend(const std::filesystem::path& rules_json);

// POST {"prompt","temperature","max_tokens"} -> {"text"}; up to max_attempts
// with exponential backoff, then BackendError.
struct HttpBackendOptions {
  std::string host = "127.0.0.1";
  int port = 0;
  std::string path = "/generate";
  int max_tokens = 256;
  int max_attempts = 3;
  int initial_backoff_ms = 100;  // doubles per retry
};

std::unique_ptr<ModelBackend> make_http_backend(HttpBackendOptions options);

enum class Policy { Greedy, SelfConsistency, Persistence };

std::string policy_name(Policy policy);
std::optional<Policy> policy_from_name(const std::string& name);

// Aggregated decision for one (quote, role) pair.
struct Verdict {
  VerdictValue value = VerdictValue::Unparseable;
  std::vector<VerdictValue> call_trace;   // per-call parsed verdicts; [0] = greedy
  std::vector<std::string> completions;   // raw completion per call
};

// Voting rules over a call trace (trace[0] is the greedy call). Unparseable
// calls count as no; a 2-2 split falls back to the greedy call's verdict.
VerdictValue vote_self_consistency(const std::vector<VerdictValue>& trace);
// Yes iff every call parsed to yes.
VerdictValue vote_persistence(const std::vector<VerdictValue>& trace);

struct ClassifyOptions {
  Policy policy = Policy::Greedy;
  bool include_cot = false;
  std::set<PromptField> ablation_mask;
  // Per-role fewshots; empty map = shipped defaults.
  std::map<Role, std::vector<FewshotExample>> fewshots;
  double sample_temperature = 0.5;
  int sample_calls = 3;  // sampled calls added to the greedy one
  uint64_t seed = 0;     // sampled call i uses seed + i
};

PromptInstance instance_from_record(const QuoteRecord& record);

// Greedy: one temperature-0 call. Self-consistency / persistence: the greedy
// call plus `sample_calls` sampled ones, aggregated by the voting rules.
Verdict classify_role(const QuoteRecord& record, Role role, ModelBackend& backend,
                      const ClassifyOptions& options);

struct QuoteClassification {
  std::set<Role> roles;  // verdict == yes
  std::map<Role, Verdict> verdicts;
};

// Eight independent classify_role calls, one per role.
QuoteClassification classify_quote(const QuoteRecord& record, ModelBackend& backend,
                                   const ClassifyOptions& options);

// One prediction row per (quote, role) call, serialized as JSONL
// {quote_id, role, policy, verdict, call_trace}.
struct Prediction {
  std::string quote_id;
  Role role = Role::Commenter;
  Policy policy = Policy::Greedy;
  VerdictValue verdict = VerdictValue::Unparseable;
  std::vector<VerdictValue> call_trace;
};

std::vector<Prediction> predictions_from(const std::string& quote_id,
                                         const QuoteClassification& result, Policy policy);

void write_predictions(const std::vector<Prediction>& predictions, std::ostream& out);
void write_predictions(const std::vector<Prediction>& predictions,
                       const std::filesystem::path& path);
std::vector<Prediction> read_predictions(std::istream& in);
std::vector<Prediction> read_predictions(const std::filesystem::path& path);

// Collapses prediction rows into per-quote role sets (verdict == yes).
std::map<std::string, std::set<Role>> prediction_role_sets(
    const std::vector<Prediction>& predictions);

// The ablation arms, in report order: no field removed, then one arm per
// removable field.
struct AblationArm {
  std::string label;  // "None", "URL", "HANDLE", "POST_URL", "SNIPPET"
  std::optional<PromptField> removed;
};

const std::vector<AblationArm>& ablation_arms();

// Classification repeated once per arm; result keyed by arm label.
std::map<std::string, std::vector<Prediction>> run_ablation(
    const std::vector<QuoteRecord>& records, ModelBackend& backend,
    const ClassifyOptions& options);

}  // namespace sqkit
