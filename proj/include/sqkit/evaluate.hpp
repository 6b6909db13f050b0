#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sqkit/annotate.hpp"

namespace sqkit {

struct RoleScore {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  int64_t n_pos = 0;  // ground-truth positives, so degenerate roles are visible
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct EvalReport {
  std::map<Role, RoleScore> per_role;
  double macro_precision = 0;
  double macro_recall = 0;
  double macro_f1 = 0;  // unweighted mean over the 8 roles
  int64_t n_examples = 0;
};

// Per-role binary confusion over every truth key; quotes missing from
// predictions count as all-negative. Throws std::invalid_argument when
// truths is empty or a prediction key has no truth.
EvalReport score(const std::map<std::string, std::set<Role>>& predictions,
                 const std::map<std::string, std::set<Role>>& truths);

// Expected F1 of the coin-flip baseline (predict positive with
// probability 1/2): p_r / (0.5 + p_r).
double coinflip_expected_f1(double p_r);

// Expected F1 of the true-frequency baseline (predict positive with
// probability p_r): p_r.
double truefreq_expected_f1(double p_r);

enum class BaselineKind { Coinflip, Truefreq };

// Monte-Carlo baseline: per trial, truth ~ Bernoulli(p_r) and the predictor
// fires with probability 0.5 (coinflip) or p_r (truefreq); returns the
// empirical F1. Deterministic for a fixed seed.
double simulate_baseline(double p_r, BaselineKind kind, int64_t trials, uint64_t seed);

// Per-role simulated baseline F1 using each role's empirical positive rate
// from the given truths.
std::map<Role, double> simulate_baseline(const std::map<std::string, std::set<Role>>& truths,
                                         BaselineKind kind, int64_t trials, uint64_t seed);

// Report writers: CSV (roles as rows, one column set per named report) and
// a JSON object mirroring EvalReport.
void write_eval_csv(const std::vector<std::pair<std::string, EvalReport>>& reports,
                    std::ostream& out);
void write_eval_json(const std::vector<std::pair<std::string, EvalReport>>& reports,
                     std::ostream& out);

}  // namespace sqkit
