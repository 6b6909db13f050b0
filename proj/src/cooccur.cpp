#include "sqkit/cooccur.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

#include "sqkit/annotate.hpp"
#include "sqkit/csv.hpp"
#include "sqkit/extractor.hpp"
#include "sqkit/url.hpp"

namespace sqkit {

int64_t CooccurrenceCounts::a(const std::string& value) const {
  auto it = a_counts.find(value);
  return it == a_counts.end() ? 0 : it->second;
}

int64_t CooccurrenceCounts::x(const std::string& value) const {
  auto it = x_counts.find(value);
  return it == x_counts.end() ? 0 : it->second;
}

int64_t CooccurrenceCounts::pair(const std::string& a_value, const std::string& x_value) const {
  auto it = pair_counts.find({a_value, x_value});
  return it == pair_counts.end() ? 0 : it->second;
}

void CooccurrenceCounts::merge(const CooccurrenceCounts& other) {
  total += other.total;
  for (const auto& [value, count] : other.a_counts) a_counts[value] += count;
  for (const auto& [value, count] : other.x_counts) x_counts[value] += count;
  for (const auto& [key, count] : other.pair_counts) pair_counts[key] += count;
}

CooccurrenceCounts count(const std::vector<QuoteRecord>& records,
                         const AttributeExtractor& a_extractor,
                         const AttributeExtractor& x_extractor) {
  CooccurrenceCounts counts;
  for (const auto& record : records) {
    counts.total += 1;
    std::vector<std::string> a_values = a_extractor(record);
    std::vector<std::string> x_values = x_extractor(record);
    for (const auto& a_value : a_values) counts.a_counts[a_value] += 1;
    for (const auto& x_value : x_values) counts.x_counts[x_value] += 1;
    for (const auto& a_value : a_values) {
      for (const auto& x_value : x_values) counts.pair_counts[{a_value, x_value}] += 1;
    }
  }
  return counts;
}

std::optional<double> relative_proportion(const CooccurrenceCounts& counts,
                                          const std::string& a_value,
                                          const std::string& x_value) {
  int64_t n_a = counts.a(a_value);
  if (n_a == 0) return std::nullopt;
  return static_cast<double>(counts.pair(a_value, x_value)) / static_cast<double>(n_a);
}

std::optional<double> mutual_information(const CooccurrenceCounts& counts,
                                         const std::string& a_value,
                                         const std::string& x_value) {
  int64_t n_a = counts.a(a_value);
  int64_t n_x = counts.x(x_value);
  if (n_a == 0 || n_x == 0) return std::nullopt;
  return static_cast<double>(counts.total) * static_cast<double>(counts.pair(a_value, x_value)) /
         (static_cast<double>(n_a) * static_cast<double>(n_x));
}

std::vector<RankedPair> top_k_by_mi(const CooccurrenceCounts& counts, const std::string& a_value,
                                    int64_t k, int64_t min_support) {
  std::vector<RankedPair> ranked;
  for (const auto& [key, n_ax] : counts.pair_counts) {
    if (key.first != a_value || n_ax < min_support) continue;
    auto p = relative_proportion(counts, key.first, key.second);
    auto mi = mutual_information(counts, key.first, key.second);
    if (!p || !mi) continue;
    ranked.push_back(RankedPair{key.second, n_ax, *p, *mi});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedPair& lhs, const RankedPair& rhs) {
    if (lhs.mi_ratio != rhs.mi_ratio) return lhs.mi_ratio > rhs.mi_ratio;
    if (lhs.n_ax != rhs.n_ax) return lhs.n_ax > rhs.n_ax;
    return lhs.x_value < rhs.x_value;
  });
  if (k > 0 && static_cast<int64_t>(ranked.size()) > k) ranked.resize(static_cast<size_t>(k));
  return ranked;
}

std::vector<std::string> domain_of(const QuoteRecord& record) {
  return {extract_domain(record.common_crawl_url)};
}

std::vector<std::string> platform_of(const QuoteRecord& record) {
  return {record.platform.name};
}

std::vector<std::string> topics_of(const QuoteRecord& record) { return record.context_topics; }

std::vector<std::string> handle_of(const QuoteRecord& record) {
  return {handle_from_profile(record.social_user_profile)};
}

std::vector<std::string> roles_of(const QuoteRecord& record) {
  std::vector<std::string> out;
  if (!record.role_labels) return out;
  for (const auto& [role, count] : *record.role_labels) out.push_back(role);
  return out;
}

std::string mantissa_exponent(double value) {
  if (value == 0) return "0E+0";
  bool negative = value < 0;
  double magnitude = std::fabs(value);
  int exponent = static_cast<int>(std::floor(std::log10(magnitude)));
  int mantissa = static_cast<int>(std::lround(magnitude / std::pow(10.0, exponent)));
  if (mantissa >= 10) {  // 9.6 rounds up to 10 -> 1E+(e+1)
    mantissa = 1;
    exponent += 1;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%s%dE%+d", negative ? "-" : "", mantissa, exponent);
  return buffer;
}

namespace {

struct ReportRow {
  std::string a_value;
  RankedPair pair;
  int64_t n_a = 0;
  int64_t n_x = 0;
};

std::vector<ReportRow> report_rows(const CooccurrenceCounts& counts,
                                   const CooccurrenceReportOptions& options) {
  std::vector<ReportRow> rows;
  for (const auto& [a_value, n_a] : counts.a_counts) {
    for (const auto& pair : top_k_by_mi(counts, a_value, options.top_k, options.min_support)) {
      ReportRow row;
      row.a_value = a_value;
      row.pair = pair;
      row.n_a = n_a;
      row.n_x = counts.x(pair.x_value);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string format_p(double value, bool scientific) {
  if (scientific) return mantissa_exponent(value);
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

std::string format_mi(double value, bool scientific) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), scientific ? "%.1f" : "%.6f", value);
  return buffer;
}

}  // namespace

void write_cooccurrence_csv(const CooccurrenceCounts& counts,
                            const CooccurrenceReportOptions& options, std::ostream& out) {
  write_csv_row(out, {"attribute_a", "attribute_x", "N_ax", "N_a", "N_x", "p", "mi_ratio"});
  for (const auto& row : report_rows(counts, options)) {
    write_csv_row(out, {row.a_value, row.pair.x_value, std::to_string(row.pair.n_ax),
                        std::to_string(row.n_a), std::to_string(row.n_x),
                        format_p(row.pair.p, options.scientific),
                        format_mi(row.pair.mi_ratio, options.scientific)});
  }
}

void write_cooccurrence_json(const CooccurrenceCounts& counts,
                             const CooccurrenceReportOptions& options, std::ostream& out) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : report_rows(counts, options)) {
    nlohmann::ordered_json item = nlohmann::ordered_json::object();
    item["attribute_a"] = row.a_value;
    item["attribute_x"] = row.pair.x_value;
    item["N_ax"] = row.pair.n_ax;
    item["N_a"] = row.n_a;
    item["N_x"] = row.n_x;
    if (options.scientific) {
      item["p"] = format_p(row.pair.p, true);
      item["mi_ratio"] = format_mi(row.pair.mi_ratio, true);
    } else {
      item["p"] = row.pair.p;
      item["mi_ratio"] = row.pair.mi_ratio;
    }
    doc.push_back(std::move(item));
  }
  out << doc.dump(2) << "\n";
}

}  // namespace sqkit
