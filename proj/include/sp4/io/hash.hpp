#pragma once

#include <openssl/evp.h>

#include <array>
#include <string>

#include "sp4/error.hpp"
#include "sp4/web/rules.hpp"

namespace sp4::io {

/// Lower-case hex SHA-256 digest.
inline std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw CacheError("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

/// Hash of the transcribed relations; cache entries are keyed by it.
inline const std::string& rule_table_hash() {
  static const std::string h = sha256_hex(RuleTable::standard().serialize());
  return h;
}

}  // namespace sp4::io
