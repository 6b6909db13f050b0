#include "sqkit/extractor.hpp"

#include <algorithm>

#include "sqkit/hash.hpp"
#include "sqkit/text.hpp"
#include "sqkit/url.hpp"

namespace sqkit {

namespace {

void scan_node(const html::Node& node, const std::vector<EmbedPattern>& patterns,
               std::vector<RawEmbed>& out) {
  if (node.kind == html::NodeKind::Element) {
    for (const auto& pattern : patterns) {
      if (node.is_element(pattern.tag_type) && node.has_class_token(pattern.tag_class)) {
        out.push_back(RawEmbed{pattern, &node, node.order});
        break;  // one RawEmbed per element, first pattern wins
      }
    }
  }
  for (const auto& child : node.children) scan_node(*child, patterns, out);
}

void collect_anchors(const html::Node& node, std::vector<const html::Node*>& out) {
  if (node.is_element("a") && node.attr("href")) out.push_back(&node);
  for (const auto& child : node.children) collect_anchors(*child, out);
}

bool host_in(const ParsedUrl& url, const std::vector<std::string>& hosts) {
  for (const auto& host : hosts) {
    if (host_matches(url.host, host)) return true;
  }
  return false;
}

std::string rebuild_prefix(const ParsedUrl& url, const std::string& first_segment) {
  std::string out = url.scheme.empty() ? std::string("https") : url.scheme;
  out += "://" + url.host;
  if (!url.port.empty()) out += ":" + url.port;
  out += "/" + first_segment;
  return out;
}

ResolveResult resolve_twitter(const RawEmbed& embed, const std::vector<std::string>& hosts,
                              Platform platform) {
  std::vector<const html::Node*> anchors;
  collect_anchors(*embed.node, anchors);

  const std::string* post_href = nullptr;
  ParsedUrl post_url;
  for (const auto* anchor : anchors) {  // last matching anchor wins
    const std::string* href = anchor->attr("href");
    auto parsed = parse_url(*href);
    if (!parsed || !host_in(*parsed, hosts)) continue;
    if (parsed->path.find("/status/") == std::string::npos) continue;
    post_href = href;
    post_url = *parsed;
  }
  if (!post_href) return Incomplete{Incomplete::Reason::NoPostUrl};

  auto segments = post_url.path_segments();
  if (segments.empty()) return Incomplete{Incomplete::Reason::NoProfile};
  ResolvedEmbed resolved;
  resolved.platform = platform;
  resolved.social_post_url = *post_href;
  resolved.social_user_profile = rebuild_prefix(post_url, segments[0]);
  resolved.handle = handle_from_profile(resolved.social_user_profile);
  return resolved;
}

ResolveResult resolve_instagram(const RawEmbed& embed, const std::vector<std::string>& hosts,
                                Platform platform) {
  std::vector<const html::Node*> anchors;
  collect_anchors(*embed.node, anchors);

  std::string post_href;
  if (const std::string* permalink = embed.node->attr("data-instgrm-permalink")) {
    auto parsed = parse_url(*permalink);
    if (parsed && host_in(*parsed, hosts)) post_href = *permalink;
  }
  if (post_href.empty()) {
    for (const auto* anchor : anchors) {  // first post anchor wins
      const std::string* href = anchor->attr("href");
      auto parsed = parse_url(*href);
      if (!parsed || !host_in(*parsed, hosts)) continue;
      const std::string& path = parsed->path;
      if (path.find("/p/") != std::string::npos || path.find("/reel/") != std::string::npos ||
          path.find("/tv/") != std::string::npos) {
        post_href = *href;
        break;
      }
    }
  }
  if (post_href.empty()) return Incomplete{Incomplete::Reason::NoPostUrl};

  for (const auto* anchor : anchors) {  // first single-segment anchor = author
    const std::string* href = anchor->attr("href");
    auto parsed = parse_url(*href);
    if (!parsed || !host_in(*parsed, hosts)) continue;
    if (parsed->path_segments().size() != 1) continue;
    ResolvedEmbed resolved;
    resolved.platform = platform;
    resolved.social_post_url = post_href;
    resolved.social_user_profile = *href;
    resolved.handle = handle_from_profile(*href);
    return resolved;
  }
  return Incomplete{Incomplete::Reason::NoProfile};
}

ResolveResult resolve_tiktok(const RawEmbed& embed, const std::vector<std::string>& hosts,
                             Platform platform) {
  std::string post_href;
  ParsedUrl post_url;
  if (const std::string* cite = embed.node->attr("cite")) {
    auto parsed = parse_url(*cite);
    if (parsed && host_in(*parsed, hosts)) {
      post_href = *cite;
      post_url = *parsed;
    }
  }
  if (post_href.empty()) {
    std::vector<const html::Node*> anchors;
    collect_anchors(*embed.node, anchors);
    for (const auto* anchor : anchors) {
      const std::string* href = anchor->attr("href");
      auto parsed = parse_url(*href);
      if (!parsed || !host_in(*parsed, hosts)) continue;
      if (parsed->path.find("/video/") == std::string::npos) continue;
      post_href = *href;
      post_url = *parsed;
      break;
    }
  }
  if (post_href.empty()) return Incomplete{Incomplete::Reason::NoPostUrl};

  auto segments = post_url.path_segments();
  if (segments.empty() || segments[0].empty() || segments[0][0] != '@') {
    return Incomplete{Incomplete::Reason::NoProfile};
  }
  ResolvedEmbed resolved;
  resolved.platform = platform;
  resolved.social_post_url = post_href;
  resolved.social_user_profile = rebuild_prefix(post_url, segments[0]);
  resolved.handle = handle_from_profile(resolved.social_user_profile);
  return resolved;
}

}  // namespace

std::vector<RawEmbed> scan_document(const html::Document& doc,
                                    const std::vector<EmbedPattern>& patterns) {
  std::vector<RawEmbed> out;
  scan_node(doc.root(), patterns, out);
  return out;
}

std::vector<RawEmbed> scan_document(const html::Document& doc, const PatternRegistry& registry) {
  return scan_document(doc, registry.patterns());
}

std::string handle_from_profile(const std::string& profile_url) {
  auto parsed = parse_url(profile_url);
  if (!parsed) return "";
  auto segments = parsed->path_segments();
  if (segments.empty()) return "";
  std::string handle = segments[0];
  if (!handle.empty() && handle[0] == '@') handle.erase(0, 1);
  return handle;
}

ResolveResult resolve_embed(const RawEmbed& embed, const PatternRegistry& registry) {
  const PlatformInfo* info = registry.platform_info(embed.pattern.platform);
  if (!info) return Incomplete{Incomplete::Reason::NoPostUrl};
  switch (info->resolver) {
    case ResolverKind::Twitter:
      return resolve_twitter(embed, info->hosts, info->platform);
    case ResolverKind::Instagram:
      return resolve_instagram(embed, info->hosts, info->platform);
    case ResolverKind::Tiktok:
      return resolve_tiktok(embed, info->hosts, info->platform);
  }
  return Incomplete{Incomplete::Reason::NoPostUrl};
}

ContextResult extract_context(const RawEmbed& embed, int tau) {
  // Candidate units: whole sibling subtrees at each ancestor level, nearest
  // level first. preceding[] runs right-to-left from the embed, following[]
  // left-to-right, so preceding[0]/following[0] hug the embed.
  std::vector<const html::Node*> preceding;
  std::vector<const html::Node*> following;
  const html::Node* current = embed.node;
  while (current->parent != nullptr) {
    const html::Node* parent = current->parent;
    int index = current->index_in_parent();
    for (int i = index - 1; i >= 0; --i) preceding.push_back(parent->children[i].get());
    for (size_t i = static_cast<size_t>(index) + 1; i < parent->children.size(); ++i) {
      following.push_back(parent->children[i].get());
    }
    current = parent;
  }

  auto unit_text = [](const html::Node* node) { return html::visible_text(*node); };

  // Advances past units with no visible text; an empty unit does not use up
  // an alternation turn.
  auto next_nonempty = [&](const std::vector<const html::Node*>& units, size_t& index,
                           std::string& text) -> const html::Node* {
    while (index < units.size()) {
      const html::Node* unit = units[index++];
      text = unit_text(unit);
      if (!text.empty()) return unit;
    }
    return nullptr;
  };

  std::vector<const html::Node*> chosen;
  size_t total = 0;
  size_t pre_index = 0;
  size_t post_index = 0;
  bool take_preceding = true;
  while (total < static_cast<size_t>(tau)) {
    std::string text;
    const html::Node* unit = take_preceding ? next_nonempty(preceding, pre_index, text)
                                            : next_nonempty(following, post_index, text);
    if (!unit) {  // preferred side exhausted; drain the other
      unit = take_preceding ? next_nonempty(following, post_index, text)
                            : next_nonempty(preceding, pre_index, text);
    }
    if (!unit) break;
    take_preceding = !take_preceding;
    chosen.push_back(unit);
    total += text.size();
  }

  std::sort(chosen.begin(), chosen.end(),
            [](const html::Node* a, const html::Node* b) { return a->order < b->order; });

  ContextResult result;
  for (const auto* unit : chosen) result.snippet += unit_text(unit);
  result.short_context = total < static_cast<size_t>(tau);
  return result;
}

QuoteRecord build_quote_record(const PageDocument& doc, const ResolvedEmbed& resolved,
                               const std::string& context_snippet,
                               const std::vector<std::string>& topics) {
  QuoteRecord record;
  record.id = quote_id(resolved.social_post_url, doc.url);
  record.common_crawl_snapshot = doc.snapshot_id;
  record.common_crawl_url = doc.url;
  record.social_post_url = resolved.social_post_url;
  record.social_user_profile = resolved.social_user_profile;
  record.platform = resolved.platform;
  record.context_snippet = context_snippet;
  record.context_topics = topics;
  return record;
}

}  // namespace sqkit
