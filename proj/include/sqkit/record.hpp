#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sqkit {

// Canonical platform identifier ("TWITTER", "INSTAGRAM", ...). Open set:
// new platforms register through the pattern registry.
struct Platform {
  std::string name;

  Platform() = default;
  explicit Platform(std::string canonical_name) : name(std::move(canonical_name)) {}

  static Platform twitter() { return Platform("TWITTER"); }
  static Platform instagram() { return Platform("INSTAGRAM"); }
  static Platform tiktok() { return Platform("TIKTOK"); }

  bool operator==(const Platform& other) const { return name == other.name; }
  bool operator!=(const Platform& other) const { return name != other.name; }
  bool operator<(const Platform& other) const { return name < other.name; }
};

// One crawled page, decoded to text.
struct PageDocument {
  std::string url;
  std::string snapshot_id;
  std::string html;
  int fetch_status = 0;
  bool decode_lossy = false;
};

// One embedded social post on one page (released schema plus the x_-prefixed
// working fields).
struct QuoteRecord {
  std::string id;  // 64 lowercase hex digits
  std::string common_crawl_snapshot;
  std::string common_crawl_url;
  std::string social_post_url;
  std::string social_user_profile;
  Platform platform;
  std::string context_snippet;
  std::vector<std::string> context_topics;  // at most 3, each begins with "/"
  std::optional<std::map<std::string, int>> role_labels;  // role name -> rater count

  bool operator==(const QuoteRecord& other) const;
};

// Checks the QuoteRecord invariants. Returns an explanation for the first
// violation, std::nullopt when valid. Platform/host consistency is checked
// by the registry-aware overload in patterns.hpp.
std::optional<std::string> validate_record_shape(const QuoteRecord& record);

}  // namespace sqkit
