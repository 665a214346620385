#pragma once

// MSE, PSNR and image fidelity between a cover and a stego image.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "dftauth/pnm.hpp"

namespace dftauth {

struct MetricsReport {
  double mse = 0.0;
  double psnr = std::numeric_limits<double>::infinity();  // +inf when mse == 0
  double image_fidelity = 1.0;                            // -inf when the cover is all zero and images differ
};

/// `a` is the reference (cover), `b` the distorted image. Sums are exact
/// integers; each metric is one final division.
inline MetricsReport compare(const PnmImage& a, const PnmImage& b) {
  if (a.kind != b.kind || a.planes.size() != b.planes.size() || a.width() != b.width() ||
      a.height() != b.height())
    throw std::invalid_argument("images differ in size or kind");

  std::uint64_t squared_error = 0;
  std::uint64_t energy = 0;
  std::uint64_t count = 0;
  for (std::size_t p = 0; p < a.planes.size(); ++p) {
    const auto& xs = a.planes[p].samples;
    const auto& ys = b.planes[p].samples;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const std::int64_t diff = std::int64_t{xs[i]} - ys[i];
      squared_error += static_cast<std::uint64_t>(diff * diff);
      energy += std::uint64_t{xs[i]} * xs[i];
    }
    count += xs.size();
  }

  MetricsReport r;
  if (count == 0 || squared_error == 0) return r;
  r.mse = static_cast<double>(squared_error) / static_cast<double>(count);
  r.psnr = 10.0 * std::log10(255.0 * 255.0 / r.mse);
  r.image_fidelity = energy == 0 ? -std::numeric_limits<double>::infinity()
                                 : 1.0 - static_cast<double>(squared_error) / static_cast<double>(energy);
  return r;
}

}  // namespace dftauth
