#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sqkit/html.hpp"
#include "sqkit/patterns.hpp"
#include "sqkit/record.hpp"

namespace sqkit {

inline constexpr int kDefaultContextTau = 300;

// A pattern hit: the matched element plus its preorder index.
struct RawEmbed {
  EmbedPattern pattern;
  const html::Node* node = nullptr;
  int document_order_index = 0;
};

struct ResolvedEmbed {
  Platform platform;
  std::string social_post_url;
  std::string social_user_profile;
  std::string handle;
};

struct Incomplete {
  enum class Reason { NoPostUrl, NoProfile };
  Reason reason = Reason::NoPostUrl;

  std::string reason_string() const {
    return reason == Reason::NoPostUrl ? "no-post-url" : "no-profile";
  }
};

using ResolveResult = std::variant<ResolvedEmbed, Incomplete>;

struct ContextResult {
  std::string snippet;
  bool short_context = false;  // page had < tau visible characters outside the embed
};

// Every element matching some pattern (name equality + class token
// membership), in document order. Nested matches are each reported once.
std::vector<RawEmbed> scan_document(const html::Document& doc, const PatternRegistry& registry);
std::vector<RawEmbed> scan_document(const html::Document& doc,
                                    const std::vector<EmbedPattern>& patterns);

// Pulls post URL + author profile out of the matched markup using the
// platform's resolver. Incomplete embeds are excluded upstream.
ResolveResult resolve_embed(const RawEmbed& embed, const PatternRegistry& registry);

// First path segment of the profile URL with any leading "@" removed.
std::string handle_from_profile(const std::string& profile_url);

// Concatenated visible text of whole sibling units taken alternately before
// and after the embed (preceding first), widening to ancestors' siblings,
// until the accumulated length reaches tau. Units are never truncated.
ContextResult extract_context(const RawEmbed& embed, int tau = kDefaultContextTau);

QuoteRecord build_quote_record(const PageDocument& doc, const ResolvedEmbed& resolved,
                               const std::string& context_snippet,
                               const std::vector<std::string>& topics);

}  // namespace sqkit
