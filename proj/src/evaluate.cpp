#include "sqkit/evaluate.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sqkit/csv.hpp"
#include "sqkit/rng.hpp"

namespace sqkit {

namespace {

double f1_from(double precision, double recall) {
  if (precision + recall == 0) return 0;  // 0/0 convention
  return 2 * precision * recall / (precision + recall);
}

RoleScore finalize(int64_t tp, int64_t fp, int64_t fn, int64_t n_pos) {
  RoleScore score;
  score.tp = tp;
  score.fp = fp;
  score.fn = fn;
  score.n_pos = n_pos;
  score.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  score.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  score.f1 = f1_from(score.precision, score.recall);
  return score;
}

}  // namespace

EvalReport score(const std::map<std::string, std::set<Role>>& predictions,
                 const std::map<std::string, std::set<Role>>& truths) {
  if (truths.empty()) throw std::invalid_argument("empty ground-truth set");
  for (const auto& [quote_id, roles] : predictions) {
    if (!truths.count(quote_id)) {
      throw std::invalid_argument("prediction for unknown quote: " + quote_id);
    }
  }

  EvalReport report;
  report.n_examples = static_cast<int64_t>(truths.size());
  static const std::set<Role> kEmpty;

  for (Role role : kAllRoles) {
    int64_t tp = 0, fp = 0, fn = 0, n_pos = 0;
    for (const auto& [quote_id, truth_roles] : truths) {
      auto prediction_it = predictions.find(quote_id);
      const std::set<Role>& predicted =
          prediction_it != predictions.end() ? prediction_it->second : kEmpty;
      bool truth = truth_roles.count(role) > 0;
      bool guess = predicted.count(role) > 0;
      if (truth) n_pos += 1;
      if (truth && guess) tp += 1;
      if (!truth && guess) fp += 1;
      if (truth && !guess) fn += 1;
    }
    report.per_role[role] = finalize(tp, fp, fn, n_pos);
  }

  double precision_sum = 0, recall_sum = 0, f1_sum = 0;
  for (Role role : kAllRoles) {
    precision_sum += report.per_role[role].precision;
    recall_sum += report.per_role[role].recall;
    f1_sum += report.per_role[role].f1;
  }
  double roles = static_cast<double>(kAllRoles.size());
  report.macro_precision = precision_sum / roles;
  report.macro_recall = recall_sum / roles;
  report.macro_f1 = f1_sum / roles;
  return report;
}

double coinflip_expected_f1(double p_r) {
  if (p_r < 0 || p_r > 1) throw std::invalid_argument("p_r must be in [0,1]");
  if (p_r == 0) return 0;
  return p_r / (0.5 + p_r);
}

double truefreq_expected_f1(double p_r) {
  if (p_r < 0 || p_r > 1) throw std::invalid_argument("p_r must be in [0,1]");
  return p_r;
}

double simulate_baseline(double p_r, BaselineKind kind, int64_t trials, uint64_t seed) {
  if (p_r < 0 || p_r > 1) throw std::invalid_argument("p_r must be in [0,1]");
  if (trials <= 0) throw std::invalid_argument("trials must be positive");

  SplitMix64 rng(seed);
  double fire = kind == BaselineKind::Coinflip ? 0.5 : p_r;
  int64_t tp = 0, fp = 0, fn = 0;
  for (int64_t i = 0; i < trials; ++i) {
    bool truth = rng.bernoulli(p_r);
    bool guess = rng.bernoulli(fire);
    if (truth && guess) tp += 1;
    if (!truth && guess) fp += 1;
    if (truth && !guess) fn += 1;
  }
  double precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  double recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  return f1_from(precision, recall);
}

std::map<Role, double> simulate_baseline(const std::map<std::string, std::set<Role>>& truths,
                                         BaselineKind kind, int64_t trials, uint64_t seed) {
  if (truths.empty()) throw std::invalid_argument("empty ground-truth set");
  std::map<Role, double> out;
  uint64_t role_index = 0;
  for (Role role : kAllRoles) {
    int64_t positives = 0;
    for (const auto& [quote_id, roles] : truths) {
      if (roles.count(role)) positives += 1;
    }
    double p_r = static_cast<double>(positives) / static_cast<double>(truths.size());
    out[role] = simulate_baseline(p_r, kind, trials, seed + role_index);
    role_index += 1;
  }
  return out;
}

void write_eval_csv(const std::vector<std::pair<std::string, EvalReport>>& reports,
                    std::ostream& out) {
  std::vector<std::string> header = {"role"};
  for (const auto& [name, report] : reports) {
    header.push_back(name + "_precision");
    header.push_back(name + "_recall");
    header.push_back(name + "_f1");
  }
  write_csv_row(out, header);

  auto format = [](double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return std::string(buffer);
  };

  for (Role role : kAllRoles) {
    std::vector<std::string> row = {role_name(role)};
    for (const auto& [name, report] : reports) {
      const RoleScore& score = report.per_role.at(role);
      row.push_back(format(score.precision));
      row.push_back(format(score.recall));
      row.push_back(format(score.f1));
    }
    write_csv_row(out, row);
  }
  std::vector<std::string> macro_row = {"MACRO_AVERAGE"};
  for (const auto& [name, report] : reports) {
    macro_row.push_back(format(report.macro_precision));
    macro_row.push_back(format(report.macro_recall));
    macro_row.push_back(format(report.macro_f1));
  }
  write_csv_row(out, macro_row);
}

void write_eval_json(const std::vector<std::pair<std::string, EvalReport>>& reports,
                     std::ostream& out) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [name, report] : reports) {
    nlohmann::ordered_json entry = nlohmann::ordered_json::object();
    entry["n_examples"] = report.n_examples;
    nlohmann::ordered_json roles = nlohmann::ordered_json::object();
    for (Role role : kAllRoles) {
      const RoleScore& score = report.per_role.at(role);
      nlohmann::ordered_json cell = nlohmann::ordered_json::object();
      cell["tp"] = score.tp;
      cell["fp"] = score.fp;
      cell["fn"] = score.fn;
      cell["n_pos"] = score.n_pos;
      cell["precision"] = score.precision;
      cell["recall"] = score.recall;
      cell["f1"] = score.f1;
      roles[role_name(role)] = cell;
    }
    entry["roles"] = roles;
    entry["macro_precision"] = report.macro_precision;
    entry["macro_recall"] = report.macro_recall;
    entry["macro_f1"] = report.macro_f1;
    doc[name] = entry;
  }
  out << doc.dump(2) << "\n";
}

}  // namespace sqkit
