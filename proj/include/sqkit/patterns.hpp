#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sqkit/record.hpp"

namespace sqkit {

// One (platform, tag_type, tag_class) detection rule. tag_class is matched
// case-sensitively against the whitespace-split class attribute tokens.
struct EmbedPattern {
  Platform platform;
  std::string tag_type;
  std::string tag_class;
};

// How post/profile URLs are pulled out of a matched element. Custom platforms
// reuse one of the built-in styles.
enum class ResolverKind { Twitter, Instagram, Tiktok };

struct PlatformInfo {
  Platform platform;
  std::vector<std::string> hosts;  // registrable hosts, subdomains accepted
  ResolverKind resolver = ResolverKind::Twitter;
};

// Immutable after load; safe to share across worker threads.
class PatternRegistry {
 public:
  // The eight default detection rules and the three built-in platforms.
  static PatternRegistry defaults();

  // Loads a registry file. Accepts either a bare JSON array of
  // {platform, tag_type, tag_class} (platforms default to the built-ins) or
  // an object {"platforms": [...], "patterns": [...]}.
  static PatternRegistry load(const std::filesystem::path& json_path);

  const std::vector<EmbedPattern>& patterns() const { return patterns_; }
  const std::vector<PlatformInfo>& platforms() const { return platforms_; }

  const PlatformInfo* platform_info(const Platform& platform) const;
  bool is_registered(const Platform& platform) const;
  bool host_belongs(const Platform& platform, const std::string& host) const;

 private:
  std::vector<EmbedPattern> patterns_;
  std::vector<PlatformInfo> platforms_;
};

// Registry-aware record validation: shape invariants plus platform
// registration and post-URL host consistency.
std::optional<std::string> validate_record(const QuoteRecord& record,
                                           const PatternRegistry& registry);

}  // namespace sqkit
