#pragma once

// Netpbm gray (PGM) and color (PPM) images, maxval 255 only.
// Accepts P2/P3/P5/P6 on input; always writes the binary forms.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dftauth {

using Bytes = std::vector<std::uint8_t>;

class PnmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One 8-bit channel, row-major.
struct ImagePlane {
  std::size_t width = 0;
  std::size_t height = 0;
  Bytes samples;

  ImagePlane() = default;
  ImagePlane(std::size_t w, std::size_t h, std::uint8_t fill = 0)
      : width(w), height(h), samples(w * h, fill) {}
  ImagePlane(std::size_t w, std::size_t h, Bytes s)
      : width(w), height(h), samples(std::move(s)) {
    if (samples.size() != width * height)
      throw PnmError("plane sample count does not match " + std::to_string(width) + "x" +
                     std::to_string(height));
  }

  std::uint8_t at(std::size_t row, std::size_t col) const { return samples[row * width + col]; }
  std::uint8_t& at(std::size_t row, std::size_t col) { return samples[row * width + col]; }

  friend bool operator==(const ImagePlane&, const ImagePlane&) = default;
};

enum class PnmKind { gray, color };

/// A gray image has one plane; a color image has three (R, G, B) of equal size.
struct PnmImage {
  PnmKind kind = PnmKind::gray;
  std::vector<ImagePlane> planes;

  static PnmImage gray(ImagePlane p) {
    PnmImage img;
    img.kind = PnmKind::gray;
    img.planes.push_back(std::move(p));
    return img;
  }

  static PnmImage color(ImagePlane r, ImagePlane g, ImagePlane b) {
    if (r.width != g.width || r.width != b.width || r.height != g.height || r.height != b.height)
      throw PnmError("color planes differ in size");
    PnmImage img;
    img.kind = PnmKind::color;
    img.planes = {std::move(r), std::move(g), std::move(b)};
    return img;
  }

  std::size_t width() const { return planes.empty() ? 0 : planes.front().width; }
  std::size_t height() const { return planes.empty() ? 0 : planes.front().height; }

  friend bool operator==(const PnmImage&, const PnmImage&) = default;
};

namespace detail {

class PnmHeaderReader {
 public:
  explicit PnmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads one token.
  std::string token() {
    skip_space_and_comments();
    std::string tok;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#')
      tok.push_back(static_cast<char>(bytes_[pos_++]));
    if (tok.empty()) throw PnmError("truncated PNM header");
    return tok;
  }

  std::size_t number(std::string_view what) {
    const std::string tok = token();
    std::size_t value = 0;
    for (char ch : tok) {
      if (ch < '0' || ch > '9')
        throw PnmError("non-numeric " + std::string(what) + " token '" + tok + "'");
      value = value * 10 + static_cast<std::size_t>(ch - '0');
      if (value > (std::size_t{1} << 24)) throw PnmError("PNM " + std::string(what) + " too large");
    }
    return value;
  }

  // Binary rasters start after exactly one whitespace byte following maxval.
  void consume_single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
      throw PnmError("missing whitespace before raster");
    ++pos_;
  }

  bool exhausted() {
    skip_space_and_comments();
    return pos_ >= bytes_.size();
  }

  std::size_t position() const { return pos_; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline PnmImage parse_pnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw PnmError("not a PNM file");
  const char magic = static_cast<char>(bytes[1]);
  if (magic != '2' && magic != '3' && magic != '5' && magic != '6')
    throw PnmError(std::string("unsupported PNM magic 'P") + magic + "'");
  const bool ascii = magic == '2' || magic == '3';
  const std::size_t nplanes = (magic == '3' || magic == '6') ? 3 : 1;

  detail::PnmHeaderReader header(bytes.subspan(2));
  const std::size_t width = header.number("width");
  const std::size_t height = header.number("height");
  const std::size_t maxval = header.number("maxval");
  if (maxval != 255) throw PnmError("unsupported maxval " + std::to_string(maxval) + " (need 255)");
  if (width == 0 || height == 0) throw PnmError("empty PNM image");

  const std::size_t pixels = width * height;
  // Every sample needs at least one byte in either encoding.
  if (bytes.size() - 2 - header.position() < pixels * nplanes) throw PnmError("truncated PNM raster");
  std::vector<ImagePlane> planes(nplanes, ImagePlane(width, height));

  if (ascii) {
    for (std::size_t i = 0; i < pixels; ++i) {
      for (std::size_t p = 0; p < nplanes; ++p) {
        if (header.exhausted()) throw PnmError("truncated PNM raster");
        const std::size_t v = header.number("sample");
        if (v > 255) throw PnmError("sample " + std::to_string(v) + " exceeds maxval");
        planes[p].samples[i] = static_cast<std::uint8_t>(v);
      }
    }
  } else {
    header.consume_single_whitespace();
    const std::size_t start = 2 + header.position();
    if (bytes.size() - start < pixels * nplanes) throw PnmError("truncated PNM raster");
    auto raster = bytes.subspan(start, pixels * nplanes);
    for (std::size_t i = 0; i < pixels; ++i)
      for (std::size_t p = 0; p < nplanes; ++p) planes[p].samples[i] = raster[i * nplanes + p];
  }

  if (nplanes == 1) return PnmImage::gray(std::move(planes[0]));
  return PnmImage::color(std::move(planes[0]), std::move(planes[1]), std::move(planes[2]));
}

inline PnmImage parse_pnm(std::string_view text) {
  return parse_pnm(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

inline Bytes write_pnm(const PnmImage& image) {
  const bool color = image.kind == PnmKind::color;
  if (image.planes.size() != (color ? 3u : 1u)) throw PnmError("plane count does not match kind");
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  const std::string header =
      std::string(color ? "P6" : "P5") + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";

  Bytes out(header.begin(), header.end());
  out.reserve(out.size() + w * h * image.planes.size());
  for (std::size_t i = 0; i < w * h; ++i)
    for (const auto& plane : image.planes) out.push_back(plane.samples[i]);
  return out;
}

inline Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

inline PnmImage load_pnm(const std::filesystem::path& path) { return parse_pnm(read_file(path)); }

inline void save_pnm(const std::filesystem::path& path, const PnmImage& image) {
  write_file(path, write_pnm(image));
}

}  // namespace dftauth
