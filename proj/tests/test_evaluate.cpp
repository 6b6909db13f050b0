#include <doctest.h>

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "sqkit/evaluate.hpp"

using namespace sqkit;
using namespace sqkit::testing;

namespace {

// Six quotes, hand-built confusion:
//   EXPERT    tp=1 fp=0 fn=1 -> P=1,   R=1/2, F1=2/3
//   SUBJECT   tp=1 fp=1 fn=1 -> P=1/2, R=1/2, F1=1/2
//   WITNESS   tp=0 fp=1 fn=0 -> all zero
//   COMMENTER tp=2 fp=0 fn=2 -> P=1,   R=1/2, F1=2/3
// macro P = 5/16, macro R = 3/16, macro F1 = 11/48.
std::map<std::string, std::set<Role>> fixture_truths() {
  return {
      {"q1", {Role::Expert, Role::Commenter}},
      {"q2", {Role::Commenter}},
      {"q3", {Role::Subject}},
      {"q4", {Role::Commenter, Role::Subject}},
      {"q5", {Role::Expert}},
      {"q6", {Role::Commenter}},
  };
}

std::map<std::string, std::set<Role>> fixture_predictions() {
  return {
      {"q1", {Role::Expert}},
      {"q2", {Role::Commenter, Role::Subject}},
      {"q3", {Role::Subject}},
      {"q4", {Role::Commenter}},
      {"q5", {Role::Witness}},
      // q6 deliberately missing: counts as all-negative.
  };
}

}  // namespace

TEST_CASE("scoring a hand-built confusion matches exact fractions") {
  EvalReport report = score(fixture_predictions(), fixture_truths());
  CHECK(report.n_examples == 6);

  const RoleScore& expert = report.per_role.at(Role::Expert);
  CHECK(expert.tp == 1);
  CHECK(expert.fp == 0);
  CHECK(expert.fn == 1);
  CHECK(expert.n_pos == 2);
  CHECK(expert.precision == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(expert.recall == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(expert.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  const RoleScore& subject = report.per_role.at(Role::Subject);
  CHECK(subject.tp == 1);
  CHECK(subject.fp == 1);
  CHECK(subject.fn == 1);
  CHECK(subject.f1 == doctest::Approx(0.5).epsilon(1e-12));

  const RoleScore& witness = report.per_role.at(Role::Witness);
  CHECK(witness.tp == 0);
  CHECK(witness.fp == 1);
  CHECK(witness.n_pos == 0);
  CHECK(witness.precision == 0.0);
  CHECK(witness.recall == 0.0);  // 0/0 convention
  CHECK(witness.f1 == 0.0);

  const RoleScore& commenter = report.per_role.at(Role::Commenter);
  CHECK(commenter.tp == 2);
  CHECK(commenter.fn == 2);
  CHECK(commenter.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  // Untouched roles stay identically zero.
  for (Role role : {Role::Influencer, Role::Authority, Role::Marketer, Role::SelfPromoter}) {
    const RoleScore& zero = report.per_role.at(role);
    CHECK(zero.tp == 0);
    CHECK(zero.fp == 0);
    CHECK(zero.fn == 0);
    CHECK(zero.f1 == 0.0);
  }

  CHECK(report.macro_precision == doctest::Approx(5.0 / 16.0).epsilon(1e-12));
  CHECK(report.macro_recall == doctest::Approx(3.0 / 16.0).epsilon(1e-12));
  CHECK(report.macro_f1 == doctest::Approx(11.0 / 48.0).epsilon(1e-12));
}

TEST_CASE("perfect predictions score a macro F1 matching the positive roles") {
  auto truths = fixture_truths();
  EvalReport report = score(truths, truths);
  for (Role role : {Role::Expert, Role::Subject, Role::Commenter}) {
    CHECK(report.per_role.at(role).f1 == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Five roles have no positives at all, so their F1 is 0 by convention and
  // the macro average is 3/8, not 1.
  CHECK(report.macro_f1 == doctest::Approx(3.0 / 8.0).epsilon(1e-12));

  // On a truth set touching every role, perfect predictions give exactly 1.
  std::map<std::string, std::set<Role>> full;
  for (size_t i = 0; i < kAllRoles.size(); ++i) {
    full["q" + std::to_string(i)] = {kAllRoles[i]};
  }
  EvalReport perfect = score(full, full);
  CHECK(perfect.macro_f1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(perfect.macro_precision == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(perfect.macro_recall == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scoring validates its inputs") {
  CHECK_THROWS_AS(score({}, {}), std::invalid_argument);
  auto truths = fixture_truths();
  std::map<std::string, std::set<Role>> stray = {{"mystery", {Role::Expert}}};
  CHECK_THROWS_AS(score(stray, truths), std::invalid_argument);
  // Empty predictions over non-empty truths: legal, everything negative.
  EvalReport report = score({}, truths);
  CHECK(report.macro_f1 == 0.0);
  CHECK(report.per_role.at(Role::Commenter).fn == 4);
}

TEST_CASE("coin-flip expected F1 follows the closed form") {
  CHECK(coinflip_expected_f1(0.1) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(coinflip_expected_f1(0.3) == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(coinflip_expected_f1(0.606) == doctest::Approx(0.606 / 1.106).epsilon(1e-12));
  CHECK(coinflip_expected_f1(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(coinflip_expected_f1(0.0) == 0.0);
  CHECK_THROWS_AS(coinflip_expected_f1(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(coinflip_expected_f1(1.1), std::invalid_argument);
}

TEST_CASE("true-frequency expected F1 is the identity") {
  for (double p : {0.0, 0.05, 0.3, 0.5, 0.92, 1.0}) {
    CHECK(truefreq_expected_f1(p) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK_THROWS_AS(truefreq_expected_f1(2.0), std::invalid_argument);
}

TEST_CASE("simulated baselines land near the closed forms") {
  const int64_t trials = 100000;
  for (double p : {0.1, 0.3, 0.606}) {
    double coin = simulate_baseline(p, BaselineKind::Coinflip, trials, 99);
    CHECK(std::abs(coin - coinflip_expected_f1(p)) < 0.01);
    double freq = simulate_baseline(p, BaselineKind::Truefreq, trials, 99);
    CHECK(std::abs(freq - truefreq_expected_f1(p)) < 0.01);
  }
  // Deterministic for a fixed seed.
  CHECK(simulate_baseline(0.3, BaselineKind::Coinflip, 1000, 5) ==
        simulate_baseline(0.3, BaselineKind::Coinflip, 1000, 5));
  CHECK_THROWS_AS(simulate_baseline(0.3, BaselineKind::Coinflip, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("per-role simulation uses each role's empirical rate") {
  auto truths = fixture_truths();  // COMMENTER 4/6, EXPERT 2/6, SUBJECT 2/6
  auto simulated = simulate_baseline(truths, BaselineKind::Coinflip, 100000, 1234);
  REQUIRE(simulated.size() == 8);
  CHECK(std::abs(simulated.at(Role::Commenter) - coinflip_expected_f1(4.0 / 6.0)) < 0.01);
  CHECK(std::abs(simulated.at(Role::Expert) - coinflip_expected_f1(2.0 / 6.0)) < 0.01);
  CHECK(simulated.at(Role::Marketer) == 0.0);  // p_r = 0 never fires a true positive

  auto freq = simulate_baseline(truths, BaselineKind::Truefreq, 100000, 1234);
  CHECK(std::abs(freq.at(Role::Commenter) - 4.0 / 6.0) < 0.01);
  std::map<std::string, std::set<Role>> no_truths;
  CHECK_THROWS_AS(simulate_baseline(no_truths, BaselineKind::Coinflip, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("CSV report has one column block per named report") {
  EvalReport report = score(fixture_predictions(), fixture_truths());
  std::ostringstream out;
  write_eval_csv({{"greedy", report}, {"coinflip", report}}, out);
  std::string text = out.str();

  std::istringstream lines(text);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "role,greedy_precision,greedy_recall,greedy_f1,"
        "coinflip_precision,coinflip_recall,coinflip_f1");

  std::vector<std::string> rows;
  std::string line;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 9);  // 8 roles + MACRO_AVERAGE
  CHECK(rows[0].rfind("EXPERT,", 0) == 0);
  CHECK(rows[5].rfind("COMMENTER,", 0) == 0);
  CHECK(rows[8].rfind("MACRO_AVERAGE,", 0) == 0);
  // 6-decimal fixed formatting, macro F1 = 11/48 = 0.229167.
  CHECK(rows[8].find("0.229167") != std::string::npos);
  CHECK(rows[0].find("1.000000,0.500000,0.666667") != std::string::npos);
}

TEST_CASE("JSON report mirrors the full report structure") {
  EvalReport report = score(fixture_predictions(), fixture_truths());
  std::ostringstream out;
  write_eval_json({{"greedy", report}}, out);
  auto doc = nlohmann::json::parse(out.str());

  REQUIRE(doc.contains("greedy"));
  const auto& entry = doc.at("greedy");
  CHECK(entry.at("n_examples") == 6);
  CHECK(entry.at("macro_f1").get<double>() == doctest::Approx(11.0 / 48.0).epsilon(1e-12));
  const auto& expert = entry.at("roles").at("EXPERT");
  CHECK(expert.at("tp") == 1);
  CHECK(expert.at("fn") == 1);
  CHECK(expert.at("n_pos") == 2);
  CHECK(expert.at("f1").get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(entry.at("roles").size() == 8);
}
