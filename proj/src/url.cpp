#include "sqkit/url.hpp"

#include <stdexcept>

#include "sqkit/text.hpp"

namespace sqkit {

std::vector<std::string> ParsedUrl::path_segments() const {
  return split_on_any(path, "/");
}

std::optional<ParsedUrl> parse_url(std::string_view url) {
  ParsedUrl out;
  size_t scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos || scheme_end == 0) return std::nullopt;
  out.scheme = to_lower(url.substr(0, scheme_end));
  std::string_view rest = url.substr(scheme_end + 3);

  size_t frag = rest.find('#');
  if (frag != std::string_view::npos) {
    out.fragment = std::string(rest.substr(frag + 1));
    rest = rest.substr(0, frag);
  }
  size_t q = rest.find('?');
  if (q != std::string_view::npos) {
    out.query = std::string(rest.substr(q + 1));
    rest = rest.substr(0, q);
  }
  size_t slash = rest.find('/');
  std::string_view authority = slash == std::string_view::npos ? rest : rest.substr(0, slash);
  out.path = slash == std::string_view::npos ? "" : std::string(rest.substr(slash));

  // Drop userinfo if present.
  size_t at = authority.rfind('@');
  if (at != std::string_view::npos) authority = authority.substr(at + 1);
  size_t colon = authority.rfind(':');
  if (colon != std::string_view::npos &&
      authority.find(']') == std::string_view::npos) {
    out.port = std::string(authority.substr(colon + 1));
    authority = authority.substr(0, colon);
  }
  out.host = to_lower(authority);
  return out;
}

bool host_matches(std::string_view host, std::string_view domain) {
  if (host.size() == domain.size()) return host == domain;
  if (host.size() > domain.size() && ends_with(host, domain)) {
    return host[host.size() - domain.size() - 1] == '.';
  }
  return false;
}

std::string extract_domain(std::string_view url) {
  auto parsed = parse_url(url);
  if (!parsed || parsed->host.empty()) {
    throw std::invalid_argument("extract_domain: URL has no host: " + std::string(url));
  }
  std::string host = parsed->host;
  if (starts_with(host, "www.") && host.size() > 4) host = host.substr(4);
  return host;
}

}  // namespace sqkit
