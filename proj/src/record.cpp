#include "sqkit/record.hpp"

#include <cctype>

#include "sqkit/text.hpp"
#include "sqkit/url.hpp"

namespace sqkit {

bool QuoteRecord::operator==(const QuoteRecord& other) const {
  return id == other.id && common_crawl_snapshot == other.common_crawl_snapshot &&
         common_crawl_url == other.common_crawl_url &&
         social_post_url == other.social_post_url &&
         social_user_profile == other.social_user_profile && platform == other.platform &&
         context_snippet == other.context_snippet && context_topics == other.context_topics &&
         role_labels == other.role_labels;
}

std::optional<std::string> validate_record_shape(const QuoteRecord& record) {
  if (record.id.size() != 64) return "id is not 64 hex digits";
  for (char c : record.id) {
    if (!std::isxdigit(static_cast<unsigned char>(c)) ||
        (std::isalpha(static_cast<unsigned char>(c)) && !std::islower(static_cast<unsigned char>(c)))) {
      return "id is not lowercase hex";
    }
  }
  if (record.common_crawl_url.empty()) return "common_crawl_url is empty";
  if (!parse_url(record.common_crawl_url)) return "common_crawl_url is not a URL";
  if (record.social_post_url.empty()) return "social_post_url is empty";
  if (!parse_url(record.social_post_url)) return "social_post_url is not a URL";
  if (record.context_topics.size() > 3) return "more than 3 context_topics";
  for (const auto& topic : record.context_topics) {
    if (!starts_with(topic, "/")) return "context_topic does not begin with '/'";
  }
  if (record.platform.name.empty()) return "platform is empty";
  if (record.role_labels) {
    for (const auto& [role, count] : *record.role_labels) {
      if (role.empty()) return "role_labels has an empty role name";
      if (count < 0) return "role_labels has a negative count";
    }
  }
  return std::nullopt;
}

}  // namespace sqkit
