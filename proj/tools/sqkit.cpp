// sqkit — social-quote corpus toolkit.
//
// Subcommands: extract, aggregate, classify, evaluate, analyze, sample.
// Configuration layers, later wins: built-in defaults, --config JSON file,
// SQK_* environment variables, command-line flags. Logs go to standard
// error; data goes to the requested files; each run ends by printing a
// machine-readable summary JSON to standard error (and to --summary).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sqkit/config.hpp"
#include "sqkit/pipeline.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string summary_path;

  // Flag values; applied only when the user passed them.
  int tau = 0;
  std::string policy;
  bool cot = false;
  uint64_t seed = 0;
  std::string format;
  int workers = 0;
  int64_t min_support = 0;
  int64_t top_k = 0;
  bool scientific = false;
};

// Wires the shared flags into one subcommand; returns the option pointers
// needed to detect presence at finalize time.
struct CommonOptions {
  CLI::Option* tau = nullptr;
  CLI::Option* policy = nullptr;
  CLI::Option* cot = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* workers = nullptr;
  CLI::Option* min_support = nullptr;
  CLI::Option* top_k = nullptr;
  CLI::Option* scientific = nullptr;
};

CommonOptions add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON config file");
  cmd->add_option("--summary", args.summary_path, "write the summary JSON here too");
  CommonOptions options;
  options.tau = cmd->add_option("--tau", args.tau, "context budget in characters");
  options.policy =
      cmd->add_option("--policy", args.policy, "greedy | self_consistency | persistence");
  options.cot = cmd->add_flag("--cot", args.cot, "include chain-of-thought paragraphs");
  options.seed = cmd->add_option("--seed", args.seed, "deterministic run seed");
  options.format = cmd->add_option("--format", args.format, "jsonl | csv");
  options.workers = cmd->add_option("--workers", args.workers, "worker threads");
  options.min_support = cmd->add_option("--min-support", args.min_support,
                                        "minimum pair count for reports");
  options.top_k = cmd->add_option("--top-k", args.top_k, "ranking depth per attribute value");
  options.scientific = cmd->add_flag("--scientific", args.scientific,
                                     "mantissa-exponent numbers in reports");
  return options;
}

sqkit::PipelineConfig finalize_config(const CommonArgs& args, const CommonOptions& options) {
  sqkit::PipelineConfig config;
  if (!args.config_path.empty()) config = sqkit::PipelineConfig::load(args.config_path);
  config.apply_env();
  if (options.tau->count()) config.tau = args.tau;
  if (options.policy->count()) config.policy = args.policy;
  if (options.cot->count()) config.cot = args.cot;
  if (options.seed->count()) config.seed = args.seed;
  if (options.format->count()) config.format = args.format;
  if (options.workers->count()) config.workers = args.workers;
  if (options.min_support->count()) config.min_support = args.min_support;
  if (options.top_k->count()) config.top_k = args.top_k;
  if (options.scientific->count()) config.scientific = args.scientific;
  config.validate();
  return config;
}

void emit_summary(const nlohmann::ordered_json& summary, const CommonArgs& args) {
  std::cerr << summary.dump() << "\n";
  if (!args.summary_path.empty()) {
    std::ofstream out(args.summary_path, std::ios::binary);
    if (!out) throw sqkit::CommandError("cannot open summary path: " + args.summary_path);
    out << summary.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"social-quote corpus toolkit"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string truth;
  std::string records;
  std::string predictions;
  bool ablate = false;
  int64_t sample_k = 0;

  CommonArgs args;

  CLI::App* extract = app.add_subcommand(
      "extract", "pull social-quote records out of a WARC file or HTML directory");
  extract->add_option("--input", input, "WARC file (.warc/.warc.gz) or HTML directory")
      ->required();
  extract->add_option("--output", output, "record file to write")->required();
  CommonOptions extract_options = add_common(extract, args);

  CLI::App* aggregate =
      app.add_subcommand("aggregate", "ground truth and agreement statistics from annotations");
  aggregate->add_option("--input", input, "annotation JSONL")->required();
  aggregate->add_option("--records", records, "record file to merge labels into");
  aggregate->add_option("--output", output, "output directory")->required();
  CommonOptions aggregate_options = add_common(aggregate, args);

  CLI::App* classify = app.add_subcommand("classify", "role classification over records");
  classify->add_option("--input", input, "record file")->required();
  classify->add_option("--truth", truth, "ground truth for scoring (jsonl)");
  classify->add_option("--output", output, "output directory")->required();
  classify->add_flag("--ablate", ablate, "run all field-removal arms");
  CommonOptions classify_options = add_common(classify, args);

  CLI::App* evaluate = app.add_subcommand("evaluate", "score an existing predictions file");
  evaluate->add_option("--input", input, "predictions JSONL")->required();
  evaluate->add_option("--truth", truth, "ground truth (jsonl)")->required();
  evaluate->add_option("--output", output, "output directory")->required();
  CommonOptions evaluate_options = add_common(evaluate, args);

  CLI::App* analyze = app.add_subcommand("analyze", "attribute co-occurrence reports");
  analyze->add_option("--input", input, "record file")->required();
  analyze->add_option("--predictions", predictions, "predictions JSONL for role attributes");
  analyze->add_option("--output", output, "output directory")->required();
  CommonOptions analyze_options = add_common(analyze, args);

  CLI::App* sample = app.add_subcommand("sample", "platform-balanced annotation sample");
  sample->add_option("--input", input, "record file")->required();
  sample->add_option("--output", output, "sample file to write")->required();
  sample->add_option("-k,--k", sample_k, "sample size (divisible by platform count)")
      ->required();
  CommonOptions sample_options = add_common(sample, args);

  CLI11_PARSE(app, argc, argv);

  try {
    nlohmann::ordered_json summary;
    if (extract->parsed()) {
      sqkit::PipelineConfig config = finalize_config(args, extract_options);
      summary = sqkit::cmd_extract(input, output, config, std::cerr).to_json();
    } else if (aggregate->parsed()) {
      sqkit::PipelineConfig config = finalize_config(args, aggregate_options);
      std::optional<std::filesystem::path> records_path;
      if (!records.empty()) records_path = records;
      summary = sqkit::cmd_aggregate(input, records_path, output, config, std::cerr);
    } else if (classify->parsed()) {
      sqkit::PipelineConfig config = finalize_config(args, classify_options);
      std::optional<std::filesystem::path> truth_path;
      if (!truth.empty()) truth_path = truth;
      summary = sqkit::cmd_classify(input, truth_path, output, ablate, config, std::cerr);
    } else if (evaluate->parsed()) {
      sqkit::PipelineConfig config = finalize_config(args, evaluate_options);
      summary = sqkit::cmd_evaluate(input, truth, output, config, std::cerr);
    } else if (analyze->parsed()) {
      sqkit::PipelineConfig config = finalize_config(args, analyze_options);
      std::optional<std::filesystem::path> predictions_path;
      if (!predictions.empty()) predictions_path = predictions;
      summary = sqkit::cmd_analyze(input, predictions_path, output, config, std::cerr);
    } else if (sample->parsed()) {
      sqkit::PipelineConfig config = finalize_config(args, sample_options);
      summary = sqkit::cmd_sample(input, sample_k, output, config, std::cerr);
    }
    emit_summary(summary, args);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
