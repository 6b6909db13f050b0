#include "sqkit/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <variant>

#include "sqkit/classify.hpp"
#include "sqkit/cooccur.hpp"
#include "sqkit/evaluate.hpp"
#include "sqkit/extractor.hpp"
#include "sqkit/filter.hpp"
#include "sqkit/html.hpp"
#include "sqkit/ingest.hpp"
#include "sqkit/parallel.hpp"
#include "sqkit/prompt.hpp"
#include "sqkit/record_io.hpp"

namespace sqkit {

namespace {

// Abstracts over the two corpus readers so the extract loop is shared.
struct AnyReader {
  std::unique_ptr<WarcReader> warc;
  std::unique_ptr<HtmlDirReader> dir;

  std::optional<PageDocument> next() { return warc ? warc->next() : dir->next(); }
  const IngestCounters& counters() const { return warc ? warc->counters() : dir->counters(); }
};

AnyReader open_reader(const std::filesystem::path& input) {
  if (!std::filesystem::exists(input)) {
    throw CommandError("input does not exist: " + input.string());
  }
  AnyReader reader;
  if (std::filesystem::is_directory(input)) {
    reader.dir = std::make_unique<HtmlDirReader>(input);
  } else {
    reader.warc = std::make_unique<WarcReader>(input);
  }
  return reader;
}

std::unique_ptr<LanguageGate> open_gate(const PipelineConfig& config) {
  if (config.language_gate == "always") return make_accept_all_gate();
  return make_html_lang_gate();
}

std::unique_ptr<TopicClassifier> open_classifier(const PipelineConfig& config) {
  const TopicClassifierSpec& spec = config.topic_classifier;
  if (spec.kind == "none") return nullptr;
  if (spec.kind == "fixture") {
    if (spec.rules_path.empty()) {
      throw CommandError("topic_classifier.rules required for the fixture classifier");
    }
    return make_fixture_classifier(spec.rules_path);
  }
  if (spec.port <= 0) throw CommandError("topic_classifier.port required for http");
  HttpClassifierOptions options;
  options.host = spec.host;
  options.port = spec.port;
  options.path = spec.path;
  return make_http_classifier(std::move(options));
}

std::unique_ptr<ModelBackend> open_backend(const PipelineConfig& config) {
  const ModelBackendSpec& spec = config.model_backend;
  if (spec.kind == "fixture") {
    if (spec.rules_path.empty()) {
      throw CommandError("model_backend.rules required for the fixture backend");
    }
    return make_fixture_backend(spec.rules_path);
  }
  if (spec.port <= 0) throw CommandError("model_backend.port required for http");
  HttpBackendOptions options;
  options.host = spec.host;
  options.port = spec.port;
  options.path = spec.path;
  options.max_tokens = spec.max_tokens;
  return make_http_backend(std::move(options));
}

ClassifyOptions classify_options(const PipelineConfig& config) {
  ClassifyOptions options;
  options.policy = *policy_from_name(config.policy);  // validate() ran already
  options.include_cot = config.cot;
  options.seed = config.seed;
  if (!config.fewshots_path.empty()) options.fewshots = load_fewshots(config.fewshots_path);
  return options;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CommandError("cannot open for write: " + path.string());
  out << text;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

// Closed-form baseline report computed from per-role truth frequencies:
// coinflip has precision p_r / recall 1/2, true-frequency has both equal to
// p_r, so all three statistics are analytic.
EvalReport closed_form_baseline(const std::map<std::string, std::set<Role>>& truths,
                                BaselineKind kind) {
  EvalReport report;
  report.n_examples = static_cast<int64_t>(truths.size());
  double precision_sum = 0;
  double recall_sum = 0;
  double f1_sum = 0;
  for (Role role : kAllRoles) {
    int64_t positives = 0;
    for (const auto& [id, roles] : truths) positives += roles.count(role) ? 1 : 0;
    double p_r = truths.empty() ? 0.0 : static_cast<double>(positives) / truths.size();
    RoleScore score;
    score.n_pos = positives;
    if (kind == BaselineKind::Coinflip) {
      score.precision = p_r;
      score.recall = 0.5;
      score.f1 = p_r > 0 ? coinflip_expected_f1(p_r) : 0.0;
    } else {
      score.precision = p_r;
      score.recall = p_r;
      score.f1 = truefreq_expected_f1(p_r);
    }
    precision_sum += score.precision;
    recall_sum += score.recall;
    f1_sum += score.f1;
    report.per_role[role] = score;
  }
  report.macro_precision = precision_sum / kAllRoles.size();
  report.macro_recall = recall_sum / kAllRoles.size();
  report.macro_f1 = f1_sum / kAllRoles.size();
  return report;
}

void write_eval_outputs(const std::vector<std::pair<std::string, EvalReport>>& reports,
                        const std::filesystem::path& out_dir) {
  {
    std::ofstream out(out_dir / "eval.csv", std::ios::binary);
    if (!out) throw CommandError("cannot open for write: " + (out_dir / "eval.csv").string());
    write_eval_csv(reports, out);
  }
  std::ofstream out(out_dir / "eval.json", std::ios::binary);
  if (!out) throw CommandError("cannot open for write: " + (out_dir / "eval.json").string());
  write_eval_json(reports, out);
}

nlohmann::ordered_json eval_summary(const std::vector<std::pair<std::string, EvalReport>>& reports) {
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& [name, report] : reports) summary[name] = report.macro_f1;
  return summary;
}

// Evaluation universe is the ground-truth set; predictions for quotes
// without a truth are dropped rather than treated as errors.
std::map<std::string, std::set<Role>> restrict_to_truths(
    std::map<std::string, std::set<Role>> predictions,
    const std::map<std::string, std::set<Role>>& truths) {
  for (auto it = predictions.begin(); it != predictions.end();) {
    it = truths.count(it->first) ? std::next(it) : predictions.erase(it);
  }
  return predictions;
}

// Batched parallel classification that flushes finished predictions before
// rethrowing, so a dead backend still leaves a partial trace on disk.
std::vector<Prediction> classify_records(const std::vector<QuoteRecord>& records,
                                         ModelBackend& backend, const ClassifyOptions& options,
                                         int workers, const std::filesystem::path& out_path,
                                         std::ostream& log) {
  std::vector<Prediction> predictions;
  size_t batch = workers < 1 ? 1 : static_cast<size_t>(workers);
  for (size_t start = 0; start < records.size(); start += batch) {
    size_t stop = std::min(records.size(), start + batch);
    std::vector<QuoteRecord> slice(records.begin() + start, records.begin() + stop);
    std::vector<QuoteClassification> results;
    try {
      results = parallel_map(slice, workers, [&](const QuoteRecord& record) {
        return classify_quote(record, backend, options);
      });
    } catch (const BackendError& error) {
      write_predictions(predictions, out_path);
      log << "backend failure after " << predictions.size() << " prediction rows: "
          << error.what() << "\n";
      throw CommandError(std::string("model backend failed: ") + error.what());
    }
    for (size_t i = 0; i < results.size(); ++i) {
      auto rows = predictions_from(slice[i].id, results[i], options.policy);
      predictions.insert(predictions.end(), rows.begin(), rows.end());
    }
  }
  write_predictions(predictions, out_path);
  return predictions;
}

}  // namespace

nlohmann::ordered_json ExtractStats::to_json() const {
  nlohmann::ordered_json doc;
  doc["input_records"] = input_records;
  doc["input_skipped"] = input_skipped;
  doc["input_malformed"] = input_malformed;
  doc["pages"] = pages;
  doc["pages_emitted"] = pages_emitted;
  doc["pages_skipped"] = pages_skipped;
  doc["pages_filtered"] = pages_filtered;
  doc["language_rejected"] = language_rejected;
  doc["language_warnings"] = language_warnings;
  doc["embeds_found"] = embeds_found;
  doc["incomplete_no_post_url"] = incomplete_no_post_url;
  doc["incomplete_no_profile"] = incomplete_no_profile;
  doc["short_context"] = short_context;
  doc["filtered_by_topic"] = filtered_by_topic;
  doc["filtered_by_url"] = filtered_by_url;
  doc["classifier_retries_exhausted"] = classifier_retries_exhausted;
  doc["records_emitted"] = records_emitted;
  return doc;
}

ExtractStats cmd_extract(const std::filesystem::path& input, const std::filesystem::path& output,
                         const PipelineConfig& config, std::ostream& log) {
  AnyReader reader = open_reader(input);
  PatternRegistry registry = config.patterns_path.empty()
                                 ? PatternRegistry::defaults()
                                 : PatternRegistry::load(config.patterns_path);
  TopicBlocklist blocklist = config.blocklist_path.empty()
                                 ? TopicBlocklist::defaults()
                                 : TopicBlocklist::load(config.blocklist_path);
  WordList wordlist;
  if (!config.wordlist_path.empty()) wordlist = WordList::load(config.wordlist_path);
  std::unique_ptr<LanguageGate> gate = open_gate(config);
  std::unique_ptr<TopicClassifier> classifier = open_classifier(config);

  ExtractStats stats;
  std::vector<QuoteRecord> records;
  while (auto doc = reader.next()) {
    stats.pages += 1;
    if (!gate->is_english(*doc)) {
      stats.language_rejected += 1;
      stats.pages_skipped += 1;
      continue;
    }
    html::Document tree = html::parse(doc->html);
    std::vector<RawEmbed> embeds = scan_document(tree, registry);
    stats.embeds_found += static_cast<int64_t>(embeds.size());
    if (embeds.empty()) {
      stats.pages_skipped += 1;
      continue;
    }
    int64_t emitted_here = 0;
    int64_t filtered_here = 0;
    for (const RawEmbed& embed : embeds) {
      ResolveResult resolved = resolve_embed(embed, registry);
      if (const auto* incomplete = std::get_if<Incomplete>(&resolved)) {
        if (incomplete->reason == Incomplete::Reason::NoPostUrl) {
          stats.incomplete_no_post_url += 1;
        } else {
          stats.incomplete_no_profile += 1;
        }
        continue;
      }
      const auto& complete = std::get<ResolvedEmbed>(resolved);
      ContextResult context = extract_context(embed, config.tau);
      if (context.short_context) stats.short_context += 1;
      std::vector<std::string> topics;
      if (classifier) topics = annotate_topics(context.snippet, *classifier);
      QuoteRecord record = build_quote_record(*doc, complete, context.snippet, topics);
      if (topic_blocked(record.context_topics, blocklist)) {
        stats.filtered_by_topic += 1;
        filtered_here += 1;
        continue;
      }
      if (url_blocked(record.common_crawl_url, wordlist) ||
          url_blocked(record.social_post_url, wordlist)) {
        stats.filtered_by_url += 1;
        filtered_here += 1;
        continue;
      }
      records.push_back(std::move(record));
      emitted_here += 1;
    }
    if (emitted_here > 0) {
      stats.pages_emitted += 1;
    } else if (filtered_here > 0) {
      stats.pages_filtered += 1;
    } else {
      stats.pages_skipped += 1;
    }
  }

  stats.records_emitted = static_cast<int64_t>(records.size());
  stats.language_warnings = gate->warnings();
  if (classifier) stats.classifier_retries_exhausted = classifier->retry_exhausted();
  const IngestCounters& counters = reader.counters();
  stats.input_records = counters.records_total;
  stats.input_skipped = counters.skipped_total();
  stats.input_malformed = counters.malformed;

  write_records(records, output, record_format_from_string(config.format));
  log << "extract: " << stats.pages << " pages, " << stats.embeds_found << " embeds, "
      << stats.records_emitted << " records -> " << output.string() << "\n";
  return stats;
}

nlohmann::ordered_json cmd_aggregate(const std::filesystem::path& annotations,
                                     const std::optional<std::filesystem::path>& records,
                                     const std::filesystem::path& out_dir,
                                     const PipelineConfig& config, std::ostream& log) {
  std::vector<AnnotationSet> sets = read_annotation_sets(annotations);
  std::filesystem::create_directories(out_dir);

  std::vector<AnnotationSet> valid;
  for (const AnnotationSet& set : sets) {
    if (is_valid(set)) valid.push_back(set);
  }
  std::vector<GroundTruth> truths;
  for (const AnnotationSet& set : valid) {
    if (auto truth = derive_ground_truth(set)) truths.push_back(std::move(*truth));
  }

  {
    std::ostringstream out;
    for (const GroundTruth& truth : truths) {
      nlohmann::ordered_json row;
      row["quote_id"] = truth.quote_id;
      auto roles = nlohmann::ordered_json::array();
      for (Role role : kAllRoles) {
        if (truth.roles.count(role)) roles.push_back(role_name(role));
      }
      row["roles"] = std::move(roles);
      out << row.dump() << "\n";
    }
    write_text_file(out_dir / "ground_truth.jsonl", out.str());
  }

  std::vector<Role> sorted_roles(kAllRoles.begin(), kAllRoles.end());
  std::sort(sorted_roles.begin(), sorted_roles.end(),
            [](Role a, Role b) { return role_name(a) < role_name(b); });

  {
    std::map<Role, int64_t> overlap = other_overlap(sets);
    std::ostringstream out;
    out << "role,fleiss_kappa,other_overlap\n";
    for (Role role : sorted_roles) {
      std::optional<double> kappa = fleiss_kappa(valid, role);
      out << role_name(role) << "," << (kappa ? format_double(*kappa) : "NA") << ","
          << overlap[role] << "\n";
    }
    write_text_file(out_dir / "fleiss_kappa.csv", out.str());
  }

  {
    std::map<Role, int64_t> frequencies = label_frequencies(truths);
    std::ostringstream out;
    out << "role,count,proportion\n";
    for (Role role : sorted_roles) {
      double proportion =
          truths.empty() ? 0.0 : static_cast<double>(frequencies[role]) / truths.size();
      out << role_name(role) << "," << frequencies[role] << "," << format_double(proportion)
          << "\n";
    }
    write_text_file(out_dir / "label_frequencies.csv", out.str());
  }

  {
    auto matrix = role_cooccurrence_matrix(truths);
    std::ostringstream out;
    out << "role";
    for (Role role : kAllRoles) out << "," << role_name(role);
    out << "\n";
    for (size_t r = 0; r < kAllRoles.size(); ++r) {
      out << role_name(kAllRoles[r]);
      for (size_t s = 0; s < kAllRoles.size(); ++s) out << "," << format_double(matrix[r][s]);
      out << "\n";
    }
    write_text_file(out_dir / "role_cooccurrence.csv", out.str());
  }

  {
    auto histogram = not_found_histogram(sets);
    std::ostringstream out;
    out << "not_found,count\n";
    for (size_t bucket = 0; bucket < histogram.size(); ++bucket) {
      out << bucket << "," << histogram[bucket] << "\n";
    }
    write_text_file(out_dir / "not_found_histogram.csv", out.str());
  }

  if (records) {
    ReadRecordsResult loaded = read_records(*records, record_format_from_path(*records), true);
    merge_ground_truth(loaded.records, sets);
    write_records(loaded.records, out_dir / ("records_labeled." + config.format),
                  record_format_from_string(config.format));
  }

  nlohmann::ordered_json summary;
  summary["annotation_sets"] = sets.size();
  summary["valid_sets"] = valid.size();
  summary["ground_truths"] = truths.size();
  summary["no_consensus"] = valid.size() - truths.size();
  log << "aggregate: " << sets.size() << " sets, " << valid.size() << " valid, "
      << truths.size() << " ground truths -> " << out_dir.string() << "\n";
  return summary;
}

nlohmann::ordered_json cmd_classify(const std::filesystem::path& records_path,
                                    const std::optional<std::filesystem::path>& truth,
                                    const std::filesystem::path& out_dir, bool ablate,
                                    const PipelineConfig& config, std::ostream& log) {
  ReadRecordsResult loaded =
      read_records(records_path, record_format_from_path(records_path), true);
  std::filesystem::create_directories(out_dir);
  std::unique_ptr<ModelBackend> backend = open_backend(config);
  ClassifyOptions options = classify_options(config);

  std::map<std::string, std::set<Role>> truths;
  if (truth) truths = load_truths(*truth);

  nlohmann::ordered_json summary;
  summary["records"] = loaded.records.size();
  summary["policy"] = config.policy;

  std::vector<std::pair<std::string, EvalReport>> reports;
  if (truth) {
    reports.emplace_back("coinflip", closed_form_baseline(truths, BaselineKind::Coinflip));
    reports.emplace_back("truefreq", closed_form_baseline(truths, BaselineKind::Truefreq));
  }

  if (ablate) {
    for (const AblationArm& arm : ablation_arms()) {
      ClassifyOptions arm_options = options;
      if (arm.removed) arm_options.ablation_mask.insert(*arm.removed);
      auto out_path = out_dir / ("predictions_" + arm.label + ".jsonl");
      std::vector<Prediction> predictions = classify_records(
          loaded.records, *backend, arm_options, config.workers, out_path, log);
      summary["prediction_rows_" + arm.label] = predictions.size();
      if (truth) {
        reports.emplace_back(
            arm.label, score(restrict_to_truths(prediction_role_sets(predictions), truths),
                             truths));
      }
    }
  } else {
    auto out_path = out_dir / "predictions.jsonl";
    std::vector<Prediction> predictions = classify_records(loaded.records, *backend, options,
                                                           config.workers, out_path, log);
    summary["prediction_rows"] = predictions.size();
    if (truth) {
      reports.emplace_back(config.policy,
                           score(restrict_to_truths(prediction_role_sets(predictions), truths),
                                 truths));
    }
  }

  if (truth) {
    write_eval_outputs(reports, out_dir);
    summary["macro_f1"] = eval_summary(reports);
  }
  log << "classify: " << loaded.records.size() << " records under " << config.policy << " -> "
      << out_dir.string() << "\n";
  return summary;
}

nlohmann::ordered_json cmd_evaluate(const std::filesystem::path& predictions,
                                    const std::filesystem::path& truth,
                                    const std::filesystem::path& out_dir,
                                    const PipelineConfig& config, std::ostream& log) {
  std::vector<Prediction> rows = read_predictions(predictions);
  std::map<std::string, std::set<Role>> truths = load_truths(truth);
  std::filesystem::create_directories(out_dir);

  std::string run_name = rows.empty() ? config.policy : policy_name(rows.front().policy);
  std::vector<std::pair<std::string, EvalReport>> reports;
  reports.emplace_back("coinflip", closed_form_baseline(truths, BaselineKind::Coinflip));
  reports.emplace_back("truefreq", closed_form_baseline(truths, BaselineKind::Truefreq));
  reports.emplace_back(run_name,
                       score(restrict_to_truths(prediction_role_sets(rows), truths), truths));
  write_eval_outputs(reports, out_dir);

  nlohmann::ordered_json summary;
  summary["prediction_rows"] = rows.size();
  summary["truth_quotes"] = truths.size();
  summary["macro_f1"] = eval_summary(reports);
  log << "evaluate: " << rows.size() << " prediction rows against " << truths.size()
      << " truths -> " << out_dir.string() << "\n";
  return summary;
}

nlohmann::ordered_json cmd_analyze(const std::filesystem::path& records_path,
                                   const std::optional<std::filesystem::path>& predictions,
                                   const std::filesystem::path& out_dir,
                                   const PipelineConfig& config, std::ostream& log) {
  ReadRecordsResult loaded =
      read_records(records_path, record_format_from_path(records_path), true);
  std::filesystem::create_directories(out_dir);

  std::vector<QuoteRecord> records = loaded.records;
  bool roles_available = false;
  if (predictions) {
    // Graft predicted roles onto role_labels so roles_of() sees them.
    auto role_sets = prediction_role_sets(read_predictions(*predictions));
    for (QuoteRecord& record : records) {
      auto found = role_sets.find(record.id);
      if (found == role_sets.end()) continue;
      std::map<std::string, int> labels;
      for (Role role : found->second) labels[role_name(role)] = 1;
      record.role_labels = std::move(labels);
      roles_available = roles_available || !found->second.empty();
    }
  } else {
    for (const QuoteRecord& record : records) {
      if (record.role_labels && !roles_of(record).empty()) {
        roles_available = true;
        break;
      }
    }
  }

  CooccurrenceReportOptions report_options;
  report_options.min_support = config.min_support;
  report_options.top_k = config.top_k;
  report_options.scientific = config.scientific;

  struct Pair {
    std::string name;
    AttributeExtractor a;
    AttributeExtractor x;
    bool needs_roles;
  };
  const std::vector<Pair> pairs = {
      {"domain_x_platform", domain_of, platform_of, false},
      {"topic_x_platform", topics_of, platform_of, false},
      {"domain_x_role", domain_of, roles_of, true},
      {"topic_x_role", topics_of, roles_of, true},
  };

  nlohmann::ordered_json summary;
  summary["records"] = records.size();
  summary["roles_available"] = roles_available;
  auto written = nlohmann::ordered_json::array();
  for (const Pair& pair : pairs) {
    if (pair.needs_roles && !roles_available) continue;
    CooccurrenceCounts counts = count(records, pair.a, pair.x);
    {
      std::ofstream out(out_dir / (pair.name + ".csv"), std::ios::binary);
      if (!out) throw CommandError("cannot open for write: " + pair.name);
      write_cooccurrence_csv(counts, report_options, out);
    }
    std::ofstream out(out_dir / (pair.name + ".json"), std::ios::binary);
    if (!out) throw CommandError("cannot open for write: " + pair.name);
    write_cooccurrence_json(counts, report_options, out);
    written.push_back(pair.name);
  }
  summary["reports"] = written;
  log << "analyze: " << records.size() << " records, " << written.size() << " reports -> "
      << out_dir.string() << "\n";
  return summary;
}

nlohmann::ordered_json cmd_sample(const std::filesystem::path& records_path, int64_t k,
                                  const std::filesystem::path& output,
                                  const PipelineConfig& config, std::ostream& log) {
  ReadRecordsResult loaded =
      read_records(records_path, record_format_from_path(records_path), true);
  std::vector<QuoteRecord> sample = sample_for_annotation(loaded.records, k, config.seed);
  write_records(sample, output, record_format_from_string(config.format));

  nlohmann::ordered_json summary;
  summary["records"] = loaded.records.size();
  summary["sampled"] = sample.size();
  summary["seed"] = config.seed;
  log << "sample: " << sample.size() << " of " << loaded.records.size() << " records -> "
      << output.string() << "\n";
  return summary;
}

std::map<std::string, std::set<Role>> load_truths(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError("cannot open ground truth: " + path.string());

  std::map<std::string, std::set<Role>> truths;
  std::string line;
  size_t line_number = 0;
  bool ground_truth_shape = false;
  bool record_shape = false;
  while (std::getline(in, line)) {
    line_number += 1;
    if (line.empty()) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& error) {
      throw CommandError("ground truth line " + std::to_string(line_number) + ": " +
                         error.what());
    }
    if (row.contains("roles")) {
      // ground_truth.jsonl shape: {quote_id, roles: [...]}.
      ground_truth_shape = true;
      std::set<Role> roles;
      for (const auto& name : row.at("roles")) {
        auto role = role_from_name(name.get<std::string>());
        if (!role) {
          throw CommandError("ground truth line " + std::to_string(line_number) +
                             ": unknown role " + name.get<std::string>());
        }
        roles.insert(*role);
      }
      truths[row.at("quote_id").get<std::string>()] = std::move(roles);
      continue;
    }
    // Records shape: role_labels carries {"ROLE": rater_count}.
    record_shape = true;
    if (!row.contains("id") || !row.contains("role_labels") || row.at("role_labels").is_null()) {
      continue;
    }
    std::set<Role> roles;
    nlohmann::json labels = nlohmann::json::parse(row.at("role_labels").get<std::string>());
    for (auto it = labels.begin(); it != labels.end(); ++it) {
      auto role = role_from_name(it.key());
      if (!role) {
        throw CommandError("ground truth line " + std::to_string(line_number) +
                           ": unknown role " + it.key());
      }
      roles.insert(*role);
    }
    if (!roles.empty()) truths[row.at("id").get<std::string>()] = std::move(roles);
  }
  if (ground_truth_shape && record_shape) {
    throw CommandError("ground truth mixes {quote_id, roles} rows with record rows: " +
                       path.string());
  }
  return truths;
}

}  // namespace sqkit
