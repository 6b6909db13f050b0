#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sqkit {

// Minimal URL decomposition; enough for host/path based routing rules.
struct ParsedUrl {
  std::string scheme;  // lowercased
  std::string host;    // lowercased, no port
  std::string port;
  std::string path;    // begins with "/" (or empty)
  std::string query;
  std::string fragment;

  // Path split into non-empty segments.
  std::vector<std::string> path_segments() const;
};

std::optional<ParsedUrl> parse_url(std::string_view url);

// True when host equals domain or is a subdomain of it.
bool host_matches(std::string_view host, std::string_view domain);

// Host of the URL, lowercased, with one leading "www." stripped.
// Subdomains are otherwise preserved. Throws std::invalid_argument when the
// URL has no host.
std::string extract_domain(std::string_view url);

}  // namespace sqkit
