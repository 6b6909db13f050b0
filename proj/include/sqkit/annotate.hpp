#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sqkit/record.hpp"

namespace sqkit {

// The eight taxonomy roles, in canonical table order.
enum class Role {
  Expert,
  Influencer,
  Authority,
  Subject,
  Witness,
  Commenter,
  Marketer,
  SelfPromoter,
};

inline constexpr std::array<Role, 8> kAllRoles = {
    Role::Expert,   Role::Influencer, Role::Authority, Role::Subject,
    Role::Witness,  Role::Commenter,  Role::Marketer,  Role::SelfPromoter,
};

// Canonical uppercase name ("SELF-PROMOTER" for the hyphenated one).
std::string role_name(Role role);
std::optional<Role> role_from_name(const std::string& name);

// One rater's answer sheet for one quote. "OTHER" travels separately from
// the taxonomy roles; found == false means the rater could not locate the
// embed on the live page and selected nothing.
struct RaterResponse {
  std::string rater_id;
  bool found = false;
  std::set<Role> roles;
  bool other = false;
};

struct AnnotationSet {
  std::string quote_id;
  std::vector<RaterResponse> responses;  // expected length 5, distinct rater_ids
};

struct GroundTruth {
  std::string quote_id;
  std::set<Role> roles;  // non-empty; taxonomy roles only
};

// True iff at least 2 responses have found == true.
bool is_valid(const AnnotationSet& set);

// Roles selected by >= 2 raters; OTHER never qualifies. nullopt means no
// role reached consensus. Throws std::invalid_argument on invalid sets.
std::optional<GroundTruth> derive_ground_truth(const AnnotationSet& set);

// Modified two-category Fleiss' kappa for one role over valid sets, counting
// found-raters only. nullopt = undefined (expected agreement is exactly 1,
// i.e. every found-response agrees on yes or on no across all items).
// Throws std::invalid_argument when any set has fewer than 2 found-raters.
std::optional<double> fleiss_kappa(const std::vector<AnnotationSet>& sets, Role role);

// Count of ground-truth sets containing each role.
std::map<Role, int64_t> label_frequencies(const std::vector<GroundTruth>& truths);

// Entry (r,s) = proportion of truths containing both r and s; diagonal =
// marginal proportions. Indexed by kAllRoles order.
std::array<std::array<double, 8>, 8> role_cooccurrence_matrix(
    const std::vector<GroundTruth>& truths);

// Buckets 0..5: how many sets had exactly k not-found responses.
std::array<int64_t, 6> not_found_histogram(const std::vector<AnnotationSet>& sets);

// For each role, the number of individual responses selecting both OTHER
// and that role.
std::map<Role, int64_t> other_overlap(const std::vector<AnnotationSet>& sets);

// k records: equal count per platform, uniform without replacement within a
// platform, no two sharing common_crawl_url; deterministic for fixed seed.
// Throws std::invalid_argument / std::runtime_error (naming the platform)
// when the supply is insufficient or k is not divisible by the platform
// count.
std::vector<QuoteRecord> sample_for_annotation(const std::vector<QuoteRecord>& records,
                                               int64_t k, uint64_t seed);

// JSONL: {"quote_id": ..., "responses": [{"rater_id", "found", "roles"}]};
// roles arrays use canonical uppercase names, with "OTHER" inline.
std::vector<AnnotationSet> read_annotation_sets(std::istream& in);
std::vector<AnnotationSet> read_annotation_sets(const std::filesystem::path& path);
void write_annotation_sets(const std::vector<AnnotationSet>& sets, std::ostream& out);
void write_annotation_sets(const std::vector<AnnotationSet>& sets,
                           const std::filesystem::path& path);

// Writes ground-truth role counts (raters per role, >=2 by construction)
// into record.role_labels for records whose id has a truth.
void merge_ground_truth(std::vector<QuoteRecord>& records,
                        const std::vector<AnnotationSet>& sets);

}  // namespace sqkit
