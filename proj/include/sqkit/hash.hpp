#pragma once

#include <string>
#include <string_view>

namespace sqkit {

// Lowercase hex SHA-256 digest of the input bytes.
std::string sha256_hex(std::string_view data);

// Record id: SHA-256 over social_post_url + "\n" + common_crawl_url.
std::string quote_id(std::string_view social_post_url, std::string_view common_crawl_url);

}  // namespace sqkit
