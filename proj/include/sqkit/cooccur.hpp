#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqkit/record.hpp"

namespace sqkit {

// Maps a record to zero or more attribute values (topics and roles are
// multi-valued; domain and platform yield exactly one).
using AttributeExtractor = std::function<std::vector<std::string>(const QuoteRecord&)>;

struct CooccurrenceCounts {
  int64_t total = 0;                                         // N
  std::map<std::string, int64_t> a_counts;                   // N_a
  std::map<std::string, int64_t> x_counts;                   // N_x
  std::map<std::pair<std::string, std::string>, int64_t> pair_counts;  // N_ax

  int64_t a(const std::string& value) const;
  int64_t x(const std::string& value) const;
  int64_t pair(const std::string& a_value, const std::string& x_value) const;

  // Shard merge; counting a concatenated corpus equals merging its shards.
  void merge(const CooccurrenceCounts& other);
};

// One increment per record per (a value, x value) combination.
CooccurrenceCounts count(const std::vector<QuoteRecord>& records,
                         const AttributeExtractor& a_extractor,
                         const AttributeExtractor& x_extractor);

// p = N_ax / N_a; nullopt when N_a == 0.
std::optional<double> relative_proportion(const CooccurrenceCounts& counts,
                                          const std::string& a_value,
                                          const std::string& x_value);

// Lift ratio N * N_ax / (N_a * N_x) — the report field is named "mi_ratio"
// because this is not Shannon mutual information. nullopt when N_a or N_x
// is 0.
std::optional<double> mutual_information(const CooccurrenceCounts& counts,
                                         const std::string& a_value,
                                         const std::string& x_value);

struct RankedPair {
  std::string x_value;
  int64_t n_ax = 0;
  double p = 0;
  double mi_ratio = 0;
};

inline constexpr int64_t kDefaultMinSupport = 5;

// x values for one a value, MI descending, requiring N_ax >= min_support;
// ties broken by higher N_ax, then lexicographic x. k <= 0 means all.
std::vector<RankedPair> top_k_by_mi(const CooccurrenceCounts& counts, const std::string& a_value,
                                    int64_t k, int64_t min_support = kDefaultMinSupport);

// Ready-made extractors.
std::vector<std::string> domain_of(const QuoteRecord& record);     // via extract_domain
std::vector<std::string> platform_of(const QuoteRecord& record);   // platform name
std::vector<std::string> topics_of(const QuoteRecord& record);     // up to 3
std::vector<std::string> handle_of(const QuoteRecord& record);     // profile handle
std::vector<std::string> roles_of(const QuoteRecord& record);      // role_labels keys

// Full report: every (a,x) pair with N_ax >= min_support, grouped by a
// (lexicographic), MI-ranked within the group. Columns:
// attribute_a, attribute_x, N_ax, N_a, N_x, p, mi_ratio.
struct CooccurrenceReportOptions {
  int64_t min_support = kDefaultMinSupport;
  int64_t top_k = 0;  // <= 0 means all
  // Paper-style mantissa-exponent formatting ("4E-2") instead of decimals.
  bool scientific = false;
};

void write_cooccurrence_csv(const CooccurrenceCounts& counts,
                            const CooccurrenceReportOptions& options, std::ostream& out);
void write_cooccurrence_json(const CooccurrenceCounts& counts,
                             const CooccurrenceReportOptions& options, std::ostream& out);

// "4E-2" style: one significant digit mantissa and a decimal exponent.
std::string mantissa_exponent(double value);

}  // namespace sqkit
