#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "sqkit/annotate.hpp"
#include "sqkit/config.hpp"

namespace sqkit {

// Counters for one extract run. Page buckets partition the page total:
// pages == pages_emitted + pages_skipped + pages_filtered.
struct ExtractStats {
  // Reader-level (WARC records or directory files).
  int64_t input_records = 0;
  int64_t input_skipped = 0;
  int64_t input_malformed = 0;

  int64_t pages = 0;
  int64_t pages_emitted = 0;   // >=1 record written
  int64_t pages_skipped = 0;   // gate-rejected, no embeds, or all incomplete
  int64_t pages_filtered = 0;  // embeds found but every record filtered out

  int64_t language_rejected = 0;
  int64_t language_warnings = 0;
  int64_t embeds_found = 0;
  int64_t incomplete_no_post_url = 0;
  int64_t incomplete_no_profile = 0;
  int64_t short_context = 0;
  int64_t filtered_by_topic = 0;
  int64_t filtered_by_url = 0;
  int64_t classifier_retries_exhausted = 0;
  int64_t records_emitted = 0;

  nlohmann::ordered_json to_json() const;
};

// Fatal subcommand failure; the CLI maps it to a nonzero exit.
struct CommandError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// input: .warc/.warc.gz file or a directory of HTML files with a
// manifest.json. Emits QuoteRecords to `output` in config.format.
ExtractStats cmd_extract(const std::filesystem::path& input, const std::filesystem::path& output,
                         const PipelineConfig& config, std::ostream& log);

// Reads annotation JSONL, writes ground_truth.jsonl, fleiss_kappa.csv
// (role, kappa, other-overlap), label_frequencies.csv,
// role_cooccurrence.csv and not_found_histogram.csv under out_dir. When
// `records` is given, also writes records with role_labels merged in.
nlohmann::ordered_json cmd_aggregate(const std::filesystem::path& annotations,
                                     const std::optional<std::filesystem::path>& records,
                                     const std::filesystem::path& out_dir,
                                     const PipelineConfig& config, std::ostream& log);

// Classifies every record against all 8 roles under config.policy, writing
// predictions.jsonl under out_dir (one predictions_<ARM>.jsonl per arm when
// ablate is set). With truth, also writes eval.csv/eval.json scoring the
// run next to the closed-form baselines (ablation: one column set per arm).
// A dead backend raises CommandError after flushing partial predictions.
nlohmann::ordered_json cmd_classify(const std::filesystem::path& records_path,
                                    const std::optional<std::filesystem::path>& truth,
                                    const std::filesystem::path& out_dir, bool ablate,
                                    const PipelineConfig& config, std::ostream& log);

// Scores an existing predictions file against ground truth.
nlohmann::ordered_json cmd_evaluate(const std::filesystem::path& predictions,
                                    const std::filesystem::path& truth,
                                    const std::filesystem::path& out_dir,
                                    const PipelineConfig& config, std::ostream& log);

// Co-occurrence reports: domain×platform and topic×platform always; role
// pairs when a role source exists (predictions file, else record labels).
nlohmann::ordered_json cmd_analyze(const std::filesystem::path& records_path,
                                   const std::optional<std::filesystem::path>& predictions,
                                   const std::filesystem::path& out_dir,
                                   const PipelineConfig& config, std::ostream& log);

// Annotation sample: k records, balanced across platforms, page URLs
// distinct, deterministic under config.seed.
nlohmann::ordered_json cmd_sample(const std::filesystem::path& records_path, int64_t k,
                                  const std::filesystem::path& output,
                                  const PipelineConfig& config, std::ostream& log);

// Ground-truth loading shared by classify/evaluate: accepts either a
// ground_truth.jsonl ({quote_id, roles}) or a records file whose
// role_labels carry consensus counts.
std::map<std::string, std::set<Role>> load_truths(const std::filesystem::path& path);

}  // namespace sqkit
