#include "sqkit/hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace sqkit {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int digest_len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
  bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
            EVP_DigestUpdate(ctx, data.data(), data.size()) == 1 &&
            EVP_DigestFinal_ex(ctx, digest.data(), &digest_len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw std::runtime_error("SHA-256 computation failed");

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(digest_len * 2);
  for (unsigned int i = 0; i < digest_len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0x0F]);
  }
  return out;
}

std::string quote_id(std::string_view social_post_url, std::string_view common_crawl_url) {
  std::string input;
  input.reserve(social_post_url.size() + 1 + common_crawl_url.size());
  input.append(social_post_url);
  input.push_back('\n');
  input.append(common_crawl_url);
  return sha256_hex(input);
}

}  // namespace sqkit
