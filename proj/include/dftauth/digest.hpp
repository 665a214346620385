#pragma once

// 128-bit payload digest (MD5, RFC 1321). Used as an integrity checksum only.

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dftauth {

struct Digest128 {
  std::array<std::uint8_t, 16> bytes{};

  std::string hex() const {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(32);
    for (auto b : bytes) {
      out.push_back(kHex[b >> 4]);
      out.push_back(kHex[b & 0x0f]);
    }
    return out;
  }

  friend bool operator==(const Digest128&, const Digest128&) = default;
};

inline Digest128 digest(std::span<const std::uint8_t> payload) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  Digest128 out;
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_md5(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), payload.data(), payload.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), out.bytes.data(), &len) != 1 || len != out.bytes.size())
    throw std::runtime_error("MD5 digest computation failed");
  return out;
}

inline Digest128 digest(std::string_view text) {
  return digest(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace dftauth
