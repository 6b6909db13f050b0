#include "sqkit/patterns.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sqkit/text.hpp"
#include "sqkit/url.hpp"

namespace sqkit {

namespace {

ResolverKind resolver_from_string(const std::string& name) {
  std::string lower = to_lower(name);
  if (lower == "twitter") return ResolverKind::Twitter;
  if (lower == "instagram") return ResolverKind::Instagram;
  if (lower == "tiktok") return ResolverKind::Tiktok;
  throw std::runtime_error("unknown resolver kind: " + name);
}

std::vector<PlatformInfo> builtin_platforms() {
  return {
      {Platform::instagram(), {"instagram.com"}, ResolverKind::Instagram},
      {Platform::tiktok(), {"tiktok.com"}, ResolverKind::Tiktok},
      {Platform::twitter(), {"twitter.com", "x.com"}, ResolverKind::Twitter},
  };
}

EmbedPattern pattern_from_json(const nlohmann::json& entry) {
  return EmbedPattern{Platform(entry.at("platform").get<std::string>()),
                      entry.at("tag_type").get<std::string>(),
                      entry.at("tag_class").get<std::string>()};
}

}  // namespace

PatternRegistry PatternRegistry::defaults() {
  PatternRegistry registry;
  registry.platforms_ = builtin_platforms();
  registry.patterns_ = {
      {Platform::instagram(), "div", "InstagramEmbedContainer"},
      {Platform::instagram(), "blockquote", "instagram-media"},
      {Platform::tiktok(), "blockquote", "tiktok-embed"},
      {Platform::tiktok(), "blockquote", "tiktok_lazy_shortcode"},
      {Platform::twitter(), "blockquote", "twitter-tweet"},
      {Platform::twitter(), "blockquote", "twitter-video"},
      {Platform::twitter(), "blockquote", "tweet-blockquote"},
      {Platform::twitter(), "blockquote", "twittertweet"},
  };
  return registry;
}

PatternRegistry PatternRegistry::load(const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw std::runtime_error("cannot open pattern registry: " + json_path.string());
  nlohmann::json doc = nlohmann::json::parse(in);

  PatternRegistry registry;
  registry.platforms_ = builtin_platforms();

  const nlohmann::json* pattern_list = nullptr;
  if (doc.is_array()) {
    pattern_list = &doc;
  } else if (doc.is_object()) {
    if (doc.contains("platforms")) {
      for (const auto& entry : doc.at("platforms")) {
        PlatformInfo info;
        info.platform = Platform(entry.at("name").get<std::string>());
        for (const auto& host : entry.at("hosts")) info.hosts.push_back(host.get<std::string>());
        info.resolver = resolver_from_string(entry.at("resolver").get<std::string>());
        bool replaced = false;
        for (auto& existing : registry.platforms_) {
          if (existing.platform == info.platform) {
            existing = info;
            replaced = true;
            break;
          }
        }
        if (!replaced) registry.platforms_.push_back(std::move(info));
      }
    }
    pattern_list = &doc.at("patterns");
  } else {
    throw std::runtime_error("pattern registry must be a JSON array or object");
  }

  for (const auto& entry : *pattern_list) {
    EmbedPattern pattern = pattern_from_json(entry);
    if (pattern.tag_type.empty() || pattern.tag_class.empty()) {
      throw std::runtime_error("pattern with empty tag_type or tag_class");
    }
    if (!registry.is_registered(pattern.platform)) {
      throw std::runtime_error("pattern references unregistered platform: " +
                               pattern.platform.name);
    }
    registry.patterns_.push_back(std::move(pattern));
  }
  return registry;
}

const PlatformInfo* PatternRegistry::platform_info(const Platform& platform) const {
  for (const auto& info : platforms_) {
    if (info.platform == platform) return &info;
  }
  return nullptr;
}

bool PatternRegistry::is_registered(const Platform& platform) const {
  return platform_info(platform) != nullptr;
}

bool PatternRegistry::host_belongs(const Platform& platform, const std::string& host) const {
  const PlatformInfo* info = platform_info(platform);
  if (!info) return false;
  for (const auto& domain : info->hosts) {
    if (host_matches(host, domain)) return true;
  }
  return false;
}

std::optional<std::string> validate_record(const QuoteRecord& record,
                                           const PatternRegistry& registry) {
  if (auto shape_error = validate_record_shape(record)) return shape_error;
  if (!registry.is_registered(record.platform)) {
    return "platform not registered: " + record.platform.name;
  }
  auto parsed = parse_url(record.social_post_url);
  if (!parsed || !registry.host_belongs(record.platform, parsed->host)) {
    return "social_post_url host inconsistent with platform " + record.platform.name;
  }
  return std::nullopt;
}

}  // namespace sqkit
