#include "sqkit/annotate.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sqkit/rng.hpp"
#include "sqkit/text.hpp"

namespace sqkit {

std::string role_name(Role role) {
  switch (role) {
    case Role::Expert: return "EXPERT";
    case Role::Influencer: return "INFLUENCER";
    case Role::Authority: return "AUTHORITY";
    case Role::Subject: return "SUBJECT";
    case Role::Witness: return "WITNESS";
    case Role::Commenter: return "COMMENTER";
    case Role::Marketer: return "MARKETER";
    case Role::SelfPromoter: return "SELF-PROMOTER";
  }
  return "";
}

std::optional<Role> role_from_name(const std::string& name) {
  for (Role role : kAllRoles) {
    if (role_name(role) == name) return role;
  }
  return std::nullopt;
}

bool is_valid(const AnnotationSet& set) {
  int found = 0;
  for (const auto& response : set.responses) {
    if (response.found) found += 1;
  }
  return found >= 2;
}

std::optional<GroundTruth> derive_ground_truth(const AnnotationSet& set) {
  if (!is_valid(set)) {
    throw std::invalid_argument("annotation set is not valid (fewer than 2 found): " +
                                set.quote_id);
  }
  std::map<Role, int> counts;
  for (const auto& response : set.responses) {
    if (!response.found) continue;
    for (Role role : response.roles) counts[role] += 1;
  }
  GroundTruth truth;
  truth.quote_id = set.quote_id;
  for (const auto& [role, count] : counts) {
    if (count >= 2) truth.roles.insert(role);
  }
  if (truth.roles.empty()) return std::nullopt;
  return truth;
}

std::optional<double> fleiss_kappa(const std::vector<AnnotationSet>& sets, Role role) {
  if (sets.empty()) throw std::invalid_argument("fleiss_kappa needs at least one item");

  int64_t sum_yes = 0;
  int64_t sum_total = 0;
  double observed = 0;
  for (const auto& set : sets) {
    int64_t n = 0;
    int64_t yes = 0;
    for (const auto& response : set.responses) {
      if (!response.found) continue;
      n += 1;
      if (response.roles.count(role)) yes += 1;
    }
    if (n < 2) {
      throw std::invalid_argument("item with fewer than 2 found-raters: " + set.quote_id);
    }
    int64_t no = n - yes;
    observed += static_cast<double>(yes * (yes - 1) + no * (no - 1)) /
                static_cast<double>(n * (n - 1));
    sum_yes += yes;
    sum_total += n;
  }

  if (sum_yes == 0 || sum_yes == sum_total) return std::nullopt;  // p_e == 1 exactly

  double p_o = observed / static_cast<double>(sets.size());
  double q = static_cast<double>(sum_yes) / static_cast<double>(sum_total);
  double p_e = q * q + (1 - q) * (1 - q);
  return (p_o - p_e) / (1 - p_e);
}

std::map<Role, int64_t> label_frequencies(const std::vector<GroundTruth>& truths) {
  std::map<Role, int64_t> counts;
  for (Role role : kAllRoles) counts[role] = 0;
  for (const auto& truth : truths) {
    for (Role role : truth.roles) counts[role] += 1;
  }
  return counts;
}

std::array<std::array<double, 8>, 8> role_cooccurrence_matrix(
    const std::vector<GroundTruth>& truths) {
  std::array<std::array<double, 8>, 8> matrix{};
  if (truths.empty()) return matrix;
  for (const auto& truth : truths) {
    for (size_t r = 0; r < kAllRoles.size(); ++r) {
      if (!truth.roles.count(kAllRoles[r])) continue;
      for (size_t s = 0; s < kAllRoles.size(); ++s) {
        if (truth.roles.count(kAllRoles[s])) matrix[r][s] += 1;
      }
    }
  }
  for (auto& row : matrix) {
    for (auto& cell : row) cell /= static_cast<double>(truths.size());
  }
  return matrix;
}

std::array<int64_t, 6> not_found_histogram(const std::vector<AnnotationSet>& sets) {
  std::array<int64_t, 6> buckets{};
  for (const auto& set : sets) {
    size_t not_found = 0;
    for (const auto& response : set.responses) {
      if (!response.found) not_found += 1;
    }
    buckets[std::min<size_t>(not_found, 5)] += 1;
  }
  return buckets;
}

std::map<Role, int64_t> other_overlap(const std::vector<AnnotationSet>& sets) {
  std::map<Role, int64_t> counts;
  for (Role role : kAllRoles) counts[role] = 0;
  for (const auto& set : sets) {
    for (const auto& response : set.responses) {
      if (!response.other) continue;
      for (Role role : response.roles) counts[role] += 1;
    }
  }
  return counts;
}

std::vector<QuoteRecord> sample_for_annotation(const std::vector<QuoteRecord>& records,
                                               int64_t k, uint64_t seed) {
  if (k <= 0) throw std::invalid_argument("sample size must be positive");

  std::map<Platform, std::vector<const QuoteRecord*>> by_platform;
  for (const auto& record : records) by_platform[record.platform].push_back(&record);
  if (by_platform.empty()) throw std::invalid_argument("no records to sample from");

  int64_t platforms = static_cast<int64_t>(by_platform.size());
  if (k % platforms != 0) {
    throw std::invalid_argument("sample size " + std::to_string(k) +
                                " is not divisible by the platform count " +
                                std::to_string(platforms));
  }
  int64_t per_platform = k / platforms;

  SplitMix64 rng(seed);
  std::set<std::string> used_urls;
  std::vector<QuoteRecord> sample;
  for (auto& [platform, pool] : by_platform) {  // std::map: sorted platform order
    rng.shuffle(pool);
    int64_t taken = 0;
    for (const auto* record : pool) {
      if (taken == per_platform) break;
      if (used_urls.count(record->common_crawl_url)) continue;
      used_urls.insert(record->common_crawl_url);
      sample.push_back(*record);
      taken += 1;
    }
    if (taken < per_platform) {
      throw std::runtime_error("not enough distinct page URLs for platform " + platform.name);
    }
  }
  return sample;
}

namespace {

using ordered_json = nlohmann::ordered_json;

AnnotationSet set_from_json(const ordered_json& row, int64_t line) {
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("annotation line " + std::to_string(line) + ": " + what);
  };
  AnnotationSet set;
  if (!row.contains("quote_id") || !row.at("quote_id").is_string()) fail("missing quote_id");
  set.quote_id = row.at("quote_id").get<std::string>();
  if (!row.contains("responses") || !row.at("responses").is_array()) fail("missing responses");

  std::set<std::string> rater_ids;
  for (const auto& item : row.at("responses")) {
    RaterResponse response;
    if (!item.contains("rater_id") || !item.at("rater_id").is_string()) fail("missing rater_id");
    response.rater_id = item.at("rater_id").get<std::string>();
    if (!rater_ids.insert(response.rater_id).second) {
      fail("duplicate rater_id " + response.rater_id);
    }
    if (!item.contains("found") || !item.at("found").is_boolean()) fail("missing found");
    response.found = item.at("found").get<bool>();
    if (item.contains("roles")) {
      for (const auto& name : item.at("roles")) {
        if (!name.is_string()) fail("role name is not a string");
        std::string text = name.get<std::string>();
        if (text == "OTHER") {
          response.other = true;
        } else if (auto role = role_from_name(text)) {
          response.roles.insert(*role);
        } else {
          fail("unknown role name " + text);
        }
      }
    }
    bool any_selection = response.other || !response.roles.empty();
    if (!response.found && any_selection) fail("not-found response selects roles");
    if (response.found && !any_selection) fail("found response selects nothing");
    set.responses.push_back(std::move(response));
  }
  return set;
}

ordered_json set_to_json(const AnnotationSet& set) {
  ordered_json row = ordered_json::object();
  row["quote_id"] = set.quote_id;
  ordered_json responses = ordered_json::array();
  for (const auto& response : set.responses) {
    ordered_json item = ordered_json::object();
    item["rater_id"] = response.rater_id;
    item["found"] = response.found;
    ordered_json roles = ordered_json::array();
    for (Role role : kAllRoles) {
      if (response.roles.count(role)) roles.push_back(role_name(role));
    }
    if (response.other) roles.push_back("OTHER");
    item["roles"] = roles;
    responses.push_back(std::move(item));
  }
  row["responses"] = responses;
  return row;
}

}  // namespace

std::vector<AnnotationSet> read_annotation_sets(std::istream& in) {
  std::vector<AnnotationSet> sets;
  std::string line;
  int64_t index = 0;
  while (std::getline(in, line)) {
    index += 1;
    if (trim(line).empty()) continue;
    sets.push_back(set_from_json(ordered_json::parse(line), index));
  }
  return sets;
}

std::vector<AnnotationSet> read_annotation_sets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open annotations: " + path.string());
  return read_annotation_sets(in);
}

void write_annotation_sets(const std::vector<AnnotationSet>& sets, std::ostream& out) {
  for (const auto& set : sets) out << set_to_json(set).dump() << "\n";
}

void write_annotation_sets(const std::vector<AnnotationSet>& sets,
                           const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  write_annotation_sets(sets, out);
}

void merge_ground_truth(std::vector<QuoteRecord>& records,
                        const std::vector<AnnotationSet>& sets) {
  std::map<std::string, const AnnotationSet*> by_id;
  for (const auto& set : sets) by_id[set.quote_id] = &set;

  for (auto& record : records) {
    auto it = by_id.find(record.id);
    if (it == by_id.end() || !is_valid(*it->second)) continue;
    auto truth = derive_ground_truth(*it->second);
    if (!truth) continue;
    std::map<Role, int> counts;
    for (const auto& response : it->second->responses) {
      if (!response.found) continue;
      for (Role role : response.roles) counts[role] += 1;
    }
    std::map<std::string, int> labels;
    for (Role role : truth->roles) labels[role_name(role)] = counts[role];
    record.role_labels = labels;
  }
}

}  // namespace sqkit
