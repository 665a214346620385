#pragma once

// Exact 2x2 block DFT in integers.
//
// For a 2x2 mask the DFT kernel exp(-j*pi*(ux+vy)) is always +1 or -1, so
// every coefficient is real. We keep the unnormalized form
//
//   D(u,v) = sum_{x,y} f(x,y) * (-1)^(ux+vy)
//
// and invert with p(x,y) = 1/4 * sum_{u,v} D(u,v) * (-1)^(ux+vy).
// The inverse is integral only when all four signed sums are multiples of 4.

#include <algorithm>
#include <array>
#include <cstdint>
#include <variant>

namespace dftauth {

/// Pixels at (0,0), (0,1), (1,0), (1,1).
struct PixelBlock {
  int a = 0;
  int b = 0;
  int c = 0;
  int d = 0;

  bool in_range() const { return a >= 0 && b >= 0 && c >= 0 && d >= 0 && a <= 255 && b <= 255 && c <= 255 && d <= 255; }
  int min() const { return std::min(std::min(a, b), std::min(c, d)); }
  int max() const { return std::max(std::max(a, b), std::max(c, d)); }

  friend bool operator==(const PixelBlock&, const PixelBlock&) = default;
};

/// D(0,0) (DC), D(0,1), D(1,0), D(1,1).
struct CoeffBlock {
  int d00 = 0;
  int d01 = 0;
  int d10 = 0;
  int d11 = 0;

  friend bool operator==(const CoeffBlock&, const CoeffBlock&) = default;
};

/// Inverse whose signed sums are not all multiples of 4. Pixel k equals
/// numerators[k] / 4 exactly.
struct FractionalFailure {
  std::array<int, 4> numerators{};

  friend bool operator==(const FractionalFailure&, const FractionalFailure&) = default;
};

using InverseResult = std::variant<PixelBlock, FractionalFailure>;

constexpr CoeffBlock forward(const PixelBlock& p) {
  return {p.a + p.b + p.c + p.d,
          p.a - p.b + p.c - p.d,
          p.a + p.b - p.c - p.d,
          p.a - p.b - p.c + p.d};
}

/// The four signed sums 4*p(x,y), in pixel order.
constexpr std::array<int, 4> inverse_numerators(const CoeffBlock& k) {
  return {k.d00 + k.d01 + k.d10 + k.d11,
          k.d00 - k.d01 + k.d10 - k.d11,
          k.d00 + k.d01 - k.d10 - k.d11,
          k.d00 - k.d01 - k.d10 + k.d11};
}

constexpr InverseResult inverse(const CoeffBlock& k) {
  const auto n = inverse_numerators(k);
  for (int v : n)
    if (v % 4 != 0) return FractionalFailure{n};
  return PixelBlock{n[0] / 4, n[1] / 4, n[2] / 4, n[3] / 4};
}

}  // namespace dftauth
