#pragma once

// Sealing payloads with their digest and checking stego images.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "dftauth/codec.hpp"
#include "dftauth/digest.hpp"
#include "dftauth/pnm.hpp"

namespace dftauth {

/// Header plus the bytes it describes.
struct SealedPayload {
  AuthHeader header;
  Bytes bytes;
};

/// Gray image payload: header carries the true width and height.
inline SealedPayload seal_image(const ImagePlane& image) {
  constexpr auto kMax = std::numeric_limits<std::uint16_t>::max();
  if (image.width > kMax || image.height > kMax)
    throw std::invalid_argument("payload image dimensions exceed 65535");
  SealedPayload out;
  out.header.payload_width = static_cast<std::uint16_t>(image.width);
  out.header.payload_height = static_cast<std::uint16_t>(image.height);
  out.header.digest = digest(image.samples);
  out.bytes = image.samples;
  return out;
}

/// Byte message payload, carried as width = length, height = 1.
inline SealedPayload seal_message(std::span<const std::uint8_t> message) {
  if (message.size() > std::numeric_limits<std::uint16_t>::max())
    throw std::invalid_argument("message longer than 65535 bytes");
  SealedPayload out;
  out.header.payload_width = static_cast<std::uint16_t>(message.size());
  out.header.payload_height = 1;
  out.header.digest = digest(message);
  out.bytes.assign(message.begin(), message.end());
  return out;
}

inline PnmImage embed(const PnmImage& cover, const SealedPayload& payload, const EmbedLayout& layout = {}) {
  return embed(cover, payload.header, payload.bytes, layout);
}

enum class VerdictStatus { authentic, forged, malformed };

inline const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::authentic: return "authentic";
    case VerdictStatus::forged: return "forged";
    case VerdictStatus::malformed: return "malformed";
  }
  return "unknown";
}

/// `authentic` requires matching digests and the sealed parity in every
/// payload-carrying mask; either failing is `forged`.
struct Verdict {
  VerdictStatus status = VerdictStatus::malformed;
  std::optional<AuthHeader> header;
  std::optional<Digest128> extracted_digest;
  std::optional<Digest128> recomputed_digest;
  std::size_t parity_violations = 0;
  std::optional<BlockLocation> first_violation;
  // Empty unless extraction succeeded.
  Bytes payload;
  std::string reason;
};

/// Extracts the bitstream and compares the carried digest to a fresh one.
/// Never throws for bad image content; that maps to `malformed`.
inline Verdict verify(const PnmImage& stego, const EmbedLayout& layout = {}) {
  Verdict v;
  try {
    Extracted x = extract(stego, layout);
    v.header = x.header;
    v.extracted_digest = x.header.digest;
    v.recomputed_digest = digest(x.payload);
    v.parity_violations = x.parity_violations;
    v.first_violation = x.first_violation;
    const bool digests_match = *v.recomputed_digest == *v.extracted_digest;
    v.status = digests_match && x.parity_violations == 0 ? VerdictStatus::authentic : VerdictStatus::forged;
    if (!digests_match)
      v.reason = "digest mismatch";
    else if (x.parity_violations != 0)
      v.reason = std::to_string(x.parity_violations) + " payload block(s) altered";
    v.payload = std::move(x.payload);
  } catch (const MalformedError& e) {
    v.status = VerdictStatus::malformed;
    v.reason = e.what();
    // The header may still be readable when only its declared size is bad.
    if (capacity_bits(stego) >= AuthHeader::bit_length) {
      v.header = AuthHeader::deserialize(extract_bitstream(stego, AuthHeader::bit_length));
      v.extracted_digest = v.header->digest;
    }
  }
  return v;
}

}  // namespace dftauth
