#pragma once

// Frequency-domain embedding of an authenticated bitstream into PNM covers.
//
// Bitstream: [width:16][height:16][digest:128][payload bytes], MSB-first.
//
// Each 2x2 mask carries 9 bits, 3 in each non-DC coefficient D(0,1), D(1,0),
// D(1,1). A coefficient d holds the 3-bit field in bits 1..3 of its residue
// mod 16; bit 0 is a parity bit shared by all three coefficients of the mask.
// Equal parity is what lets the DC coefficient alone restore integral pixels
// after the inverse transform (all four coefficients of an integer block
// have the same parity, and the inverse divides by 4).
//
// The embedder always writes even parity. Any +-1 change to one pixel moves
// all four coefficients by +-1 and so flips that parity, which extraction
// reports; a freely chosen parity would let some such changes through with
// every 3-bit field intact.
//
// Traversal: plane by plane (R, G, B or the single gray plane), masks in
// row-major order, coefficients in the order d01, d10, d11. A trailing odd
// row or column is never touched.

#include <algorithm>
#include <array>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dftauth/block_dft.hpp"
#include "dftauth/digest.hpp"
#include "dftauth/pnm.hpp"

namespace dftauth {

class StegoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PayloadTooLargeError : public StegoError {
 public:
  PayloadTooLargeError(std::size_t needed_bits, std::size_t capacity_bits)
      : StegoError("payload too large: needs " + std::to_string(needed_bits) + " bits, cover holds " +
                   std::to_string(capacity_bits)),
        needed_bits(needed_bits),
        capacity_bits(capacity_bits) {}

  std::size_t needed_bits;
  std::size_t capacity_bits;
};

/// Location of a mask in an image: plane index plus the pixel row/column of
/// its top-left sample.
struct BlockLocation {
  std::size_t plane = 0;
  std::size_t row = 0;
  std::size_t col = 0;

  friend bool operator==(const BlockLocation&, const BlockLocation&) = default;
};

/// No DC value brings every pixel of the mask into [0,255].
class UnembeddableError : public StegoError {
 public:
  UnembeddableError() : StegoError("unembeddable block: pixel span exceeds 255") {}
  explicit UnembeddableError(const BlockLocation& where)
      : StegoError("unembeddable block at plane " + std::to_string(where.plane) + ", row " +
                   std::to_string(where.row) + ", col " + std::to_string(where.col) +
                   ": pixel span exceeds 255"),
        location(where) {}

  std::optional<BlockLocation> location;
};

/// The stego image does not hold a consistent bitstream.
class MalformedError : public StegoError {
 public:
  using StegoError::StegoError;
};

/// Fixed bit layout. Payload bits sit at residue positions 1..3, parity at 0.
struct EmbedLayout {
  static constexpr int residue_modulus = 16;
  static constexpr int parity_position = 0;
  static constexpr unsigned sealed_parity = 0;
  static constexpr int payload_low_position = 1;
  static constexpr int bits_per_coefficient = 3;
  static constexpr int coefficients_per_block = 3;
  static constexpr int bits_per_block = bits_per_coefficient * coefficients_per_block;
  static constexpr int max_coefficient_shift = residue_modulus / 2;
};

struct AuthHeader {
  static constexpr std::size_t bit_length = 16 + 16 + 128;

  std::uint16_t payload_width = 0;
  std::uint16_t payload_height = 0;
  Digest128 digest;

  std::size_t payload_bytes() const { return std::size_t{payload_width} * payload_height; }

  Bytes serialize() const {
    Bytes out;
    out.reserve(bit_length / 8);
    out.push_back(static_cast<std::uint8_t>(payload_width >> 8));
    out.push_back(static_cast<std::uint8_t>(payload_width & 0xff));
    out.push_back(static_cast<std::uint8_t>(payload_height >> 8));
    out.push_back(static_cast<std::uint8_t>(payload_height & 0xff));
    out.insert(out.end(), digest.bytes.begin(), digest.bytes.end());
    return out;
  }

  static AuthHeader deserialize(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != bit_length / 8) throw MalformedError("header must be 20 bytes");
    AuthHeader h;
    h.payload_width = static_cast<std::uint16_t>((bytes[0] << 8) | bytes[1]);
    h.payload_height = static_cast<std::uint16_t>((bytes[2] << 8) | bytes[3]);
    std::copy(bytes.begin() + 4, bytes.end(), h.digest.bytes.begin());
    return h;
  }

  friend bool operator==(const AuthHeader&, const AuthHeader&) = default;
};

/// MSB-first reader over a byte sequence.
class BitCursor {
 public:
  explicit BitCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() * 8 - offset_; }
  std::size_t consumed() const { return offset_; }

  unsigned read(int count) {
    if (count < 0 || static_cast<std::size_t>(count) > remaining())
      throw std::out_of_range("bit cursor read past end");
    unsigned value = 0;
    for (int i = 0; i < count; ++i, ++offset_) {
      const unsigned bit = (bytes_[offset_ / 8] >> (7 - offset_ % 8)) & 1u;
      value = (value << 1) | bit;
    }
    return value;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t offset_ = 0;
};

/// MSB-first writer; a trailing partial byte is zero-padded.
class BitSink {
 public:
  void write(unsigned value, int count) {
    for (int i = count - 1; i >= 0; --i) {
      if (bits_ % 8 == 0) bytes_.push_back(0);
      if ((value >> i) & 1u) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
      ++bits_;
    }
  }

  std::size_t size_bits() const { return bits_; }
  const Bytes& bytes() const { return bytes_; }
  Bytes take() && { return std::move(bytes_); }

 private:
  Bytes bytes_;
  std::size_t bits_ = 0;
};

/// Mathematical residue, always in [0, modulus).
constexpr int residue(int value, int modulus) {
  const int r = value % modulus;
  return r < 0 ? r + modulus : r;
}

inline std::size_t capacity_bits(std::size_t width, std::size_t height, std::size_t planes) {
  return EmbedLayout::bits_per_block * (width / 2) * (height / 2) * planes;
}

inline std::size_t capacity_bits(const PnmImage& image) {
  return capacity_bits(image.width(), image.height(), image.planes.size());
}

/// Payload bytes that fit after the 160-bit header.
inline std::size_t payload_capacity_bytes(const PnmImage& image) {
  const std::size_t bits = capacity_bits(image);
  return bits < AuthHeader::bit_length ? 0 : (bits - AuthHeader::bit_length) / 8;
}

/// Nearest integer to `d` whose residue mod 16 is parity + 2*bits. Ties go
/// to the larger candidate; the shift never exceeds 8.
constexpr int embed_coefficient(int d, unsigned bits, unsigned parity) {
  constexpr int m = EmbedLayout::residue_modulus;
  const int target = static_cast<int>((parity & 1u) | ((bits & 7u) << EmbedLayout::payload_low_position));
  const int base = d - residue(d, m) + target;
  auto distance = [d](int v) { return v > d ? v - d : d - v; };
  int best = base - m;
  for (int candidate : {base, base + m}) {
    const int dist = distance(candidate);
    const int best_dist = distance(best);
    if (dist < best_dist || (dist == best_dist && candidate > best)) best = candidate;
  }
  return best;
}

/// The 3-bit field carried by a coefficient.
constexpr unsigned coefficient_bits(int d) {
  return static_cast<unsigned>(residue(d, EmbedLayout::residue_modulus) >> EmbedLayout::payload_low_position) & 7u;
}

/// Parity for the three non-DC coefficients that minimizes their total
/// shift; ties pick 0. Not used by `embed`, which writes `sealed_parity`
/// so that tampering stays detectable.
inline unsigned choose_parity(const CoeffBlock& k, std::span<const unsigned, 3> bits) {
  auto cost = [&](unsigned parity) {
    return std::abs(embed_coefficient(k.d01, bits[0], parity) - k.d01) +
           std::abs(embed_coefficient(k.d10, bits[1], parity) - k.d10) +
           std::abs(embed_coefficient(k.d11, bits[2], parity) - k.d11);
  };
  return cost(1) < cost(0) ? 1u : 0u;
}

/// Splits a 9-bit group into the per-coefficient fields, d01 first.
constexpr std::array<unsigned, 3> split_block_bits(unsigned bits9) {
  return {(bits9 >> 6) & 7u, (bits9 >> 3) & 7u, bits9 & 7u};
}

/// Writes a 9-bit group into the non-DC coefficients. DC is left alone.
inline CoeffBlock embed_block_bits(const CoeffBlock& k, unsigned bits9,
                                   unsigned parity = EmbedLayout::sealed_parity) {
  const auto fields = split_block_bits(bits9);
  CoeffBlock out = k;
  out.d01 = embed_coefficient(k.d01, fields[0], parity);
  out.d10 = embed_coefficient(k.d10, fields[1], parity);
  out.d11 = embed_coefficient(k.d11, fields[2], parity);
  assert(std::abs(out.d01 - k.d01) <= EmbedLayout::max_coefficient_shift);
  assert(std::abs(out.d10 - k.d10) <= EmbedLayout::max_coefficient_shift);
  assert(std::abs(out.d11 - k.d11) <= EmbedLayout::max_coefficient_shift);
  return out;
}

constexpr unsigned extract_block_bits(const CoeffBlock& k) {
  return (coefficient_bits(k.d01) << 6) | (coefficient_bits(k.d10) << 3) | coefficient_bits(k.d11);
}

/// DC-only correction; nullopt when the pixel span exceeds 255.
/// Requires d01, d10, d11 to share parity.
inline std::optional<CoeffBlock> try_readjust_dc(const CoeffBlock& k) {
  if (residue(k.d01, 2) != residue(k.d10, 2) || residue(k.d01, 2) != residue(k.d11, 2))
    throw std::invalid_argument("readjust_dc: non-DC coefficients differ in parity");

  CoeffBlock out = k;
  // Smallest |step| making the signed sums multiples of 4; a tie (+2/-2) goes up.
  switch (residue(k.d00 + k.d01 + k.d10 + k.d11, 4)) {
    case 1: out.d00 -= 1; break;
    case 2: out.d00 += 2; break;
    case 3: out.d00 += 1; break;
    default: break;
  }

  const auto n = inverse_numerators(out);
  const PixelBlock p{n[0] / 4, n[1] / 4, n[2] / 4, n[3] / 4};
  if (p.max() - p.min() > 255) return std::nullopt;
  // Each +-4 on DC moves every pixel by +-1.
  if (p.min() < 0) out.d00 += 4 * (-p.min());
  if (p.max() > 255) out.d00 -= 4 * (p.max() - 255);
  return out;
}

inline CoeffBlock readjust_dc(const CoeffBlock& k) {
  if (auto out = try_readjust_dc(k)) return *out;
  throw UnembeddableError();
}

namespace detail {

inline PixelBlock read_block(const ImagePlane& plane, std::size_t row, std::size_t col) {
  return {plane.at(row, col), plane.at(row, col + 1), plane.at(row + 1, col), plane.at(row + 1, col + 1)};
}

inline void write_block(ImagePlane& plane, std::size_t row, std::size_t col, const PixelBlock& p) {
  assert(p.in_range());
  plane.at(row, col) = static_cast<std::uint8_t>(p.a);
  plane.at(row, col + 1) = static_cast<std::uint8_t>(p.b);
  plane.at(row + 1, col) = static_cast<std::uint8_t>(p.c);
  plane.at(row + 1, col + 1) = static_cast<std::uint8_t>(p.d);
}

/// Visits masks in traversal order until `visit` returns false.
template <class Image, class Visit>
void for_each_block(Image& image, Visit&& visit) {
  for (std::size_t p = 0; p < image.planes.size(); ++p) {
    auto& plane = image.planes[p];
    for (std::size_t row = 0; row + 1 < plane.height; row += 2)
      for (std::size_t col = 0; col + 1 < plane.width; col += 2)
        if (!visit(plane, BlockLocation{p, row, col})) return;
  }
}

}  // namespace detail

/// Embeds `bits` (MSB-first, `bit_count` long) into the cover. The last mask
/// is zero-padded when the stream is not a multiple of 9 bits.
inline PnmImage embed_bitstream(const PnmImage& cover, std::span<const std::uint8_t> stream, std::size_t bit_count) {
  if (cover.width() < 2 || cover.height() < 2) throw StegoError("cover must be at least 2x2");
  if (bit_count > stream.size() * 8) throw std::invalid_argument("bit count exceeds stream length");
  const std::size_t capacity = capacity_bits(cover);
  if (bit_count > capacity) throw PayloadTooLargeError(bit_count, capacity);

  PnmImage stego = cover;
  BitCursor cursor(stream.first((bit_count + 7) / 8));
  std::size_t left = bit_count;
  detail::for_each_block(stego, [&](ImagePlane& plane, const BlockLocation& at) {
    if (left == 0) return false;
    const int take = static_cast<int>(std::min<std::size_t>(left, EmbedLayout::bits_per_block));
    const unsigned bits9 = cursor.read(take) << (EmbedLayout::bits_per_block - take);
    left -= static_cast<std::size_t>(take);

    const CoeffBlock embedded = embed_block_bits(forward(detail::read_block(plane, at.row, at.col)), bits9);
    const auto adjusted = try_readjust_dc(embedded);
    if (!adjusted) throw UnembeddableError(at);
    detail::write_block(plane, at.row, at.col, std::get<PixelBlock>(inverse(*adjusted)));
    return true;
  });
  return stego;
}

/// Embeds header and payload. The payload length must equal the header's
/// width * height.
inline PnmImage embed(const PnmImage& cover, const AuthHeader& header, std::span<const std::uint8_t> payload,
                      const EmbedLayout& = {}) {
  if (payload.size() != header.payload_bytes())
    throw std::invalid_argument("payload length " + std::to_string(payload.size()) +
                                " does not match header dimensions " + std::to_string(header.payload_width) + "x" +
                                std::to_string(header.payload_height));
  Bytes stream = header.serialize();
  stream.insert(stream.end(), payload.begin(), payload.end());
  return embed_bitstream(cover, stream, stream.size() * 8);
}

/// Embedded bits plus the masks whose parity is not the sealed one.
struct BitstreamScan {
  Bytes bits;
  std::size_t parity_violations = 0;
  std::optional<BlockLocation> first_violation;
};

/// Reads the first `bit_count` embedded bits, in traversal order, checking
/// the parity of every mask that carries them.
inline BitstreamScan scan_bitstream(const PnmImage& stego, std::size_t bit_count) {
  const std::size_t capacity = capacity_bits(stego);
  if (bit_count > capacity)
    throw MalformedError("requested " + std::to_string(bit_count) + " bits but image holds " +
                         std::to_string(capacity));
  BitstreamScan scan;
  BitSink sink;
  detail::for_each_block(stego, [&](const ImagePlane& plane, const BlockLocation& at) {
    const std::size_t left = bit_count - sink.size_bits();
    if (left == 0) return false;
    const int take = static_cast<int>(std::min<std::size_t>(left, EmbedLayout::bits_per_block));
    const CoeffBlock k = forward(detail::read_block(plane, at.row, at.col));
    sink.write(extract_block_bits(k) >> (EmbedLayout::bits_per_block - take), take);
    if (static_cast<unsigned>(residue(k.d01, 2)) != EmbedLayout::sealed_parity) {
      if (scan.parity_violations++ == 0) scan.first_violation = at;
    }
    return true;
  });
  scan.bits = std::move(sink).take();
  return scan;
}

inline Bytes extract_bitstream(const PnmImage& stego, std::size_t bit_count) {
  return scan_bitstream(stego, bit_count).bits;
}

struct Extracted {
  AuthHeader header;
  Bytes payload;
  // Masks that carry bits but have lost the sealed parity: the image was
  // altered after embedding even if every payload bit survived.
  std::size_t parity_violations = 0;
  std::optional<BlockLocation> first_violation;
};

inline Extracted extract(const PnmImage& stego, const EmbedLayout& = {}) {
  if (stego.width() < 2 || stego.height() < 2) throw MalformedError("image smaller than 2x2");
  const std::size_t capacity = capacity_bits(stego);
  if (capacity < AuthHeader::bit_length) throw MalformedError("image too small to hold a header");

  Extracted out;
  out.header = AuthHeader::deserialize(extract_bitstream(stego, AuthHeader::bit_length));
  const std::size_t total_bits = AuthHeader::bit_length + 8 * out.header.payload_bytes();
  if (total_bits > capacity)
    throw MalformedError("declared payload " + std::to_string(out.header.payload_width) + "x" +
                         std::to_string(out.header.payload_height) + " exceeds image capacity");

  BitstreamScan scan = scan_bitstream(stego, total_bits);
  out.payload.assign(scan.bits.begin() + AuthHeader::bit_length / 8, scan.bits.end());
  out.parity_violations = scan.parity_violations;
  out.first_violation = scan.first_violation;
  return out;
}

}  // namespace dftauth
