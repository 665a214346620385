// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Thresholds are fixed here.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dftauth/dftauth.hpp"
#include "test_support.hpp"

using namespace dftauth;
namespace t = dftauth::testkit;

namespace {

constexpr double kPsnrLow = 35.0;
constexpr double kPsnrHigh = 41.0;
constexpr double kMinFidelity = 0.999;
constexpr double kMaxMse = 20.0;
constexpr double kCapacitySeconds = 1.0;
constexpr double kRoundTripSeconds = 5.0;
constexpr int kTamperTrials = 1000;
constexpr int kRandomTransformBlocks = 100000;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

PnmImage cover(const char* name) { return load_pnm(t::data_dir() / name); }

Outcome capacity_reproduction() {
  const auto start = std::chrono::steady_clock::now();
  const PnmImage img = cover("camera.pgm");
  const std::size_t bytes = capacity_bits(img) / 8;
  const double s = seconds_since(start);
  return {bytes == 73728 && capacity_bits(img) % 8 == 0 && s < kCapacitySeconds,
          fmt("capacity %zu bytes (payload %zu), %.3f s", bytes, payload_capacity_bytes(img), s)};
}

Outcome full_load_round_trip() {
  const PnmImage c = cover("camera.pgm");
  const PnmImage payload = cover("coffee-270x270.pgm");
  const auto start = std::chrono::steady_clock::now();
  const SealedPayload sealed = seal_image(payload.planes[0]);
  const PnmImage stego = parse_pnm(write_pnm(embed(c, sealed)));
  const Extracted x = extract(stego);
  const Verdict v = verify(stego);
  const double s = seconds_since(start);
  const bool exact = x.payload == payload.planes[0].samples && x.header == sealed.header;
  return {exact && v.status == VerdictStatus::authentic && s < kRoundTripSeconds,
          fmt("%zu-byte payload %s, verdict %s, %.3f s", sealed.bytes.size(), exact ? "byte-exact" : "MISMATCH",
              to_string(v.status), s)};
}

Outcome quality_band() {
  const PnmImage payload = cover("coffee-270x270.pgm");
  const SealedPayload sealed = seal_image(payload.planes[0]);
  bool pass = true;
  std::string detail;
  int images = 0;
  for (const char* name : {"camera.pgm", "moon.pgm", "astronaut.pgm", "brick.pgm"}) {
    const PnmImage c = cover(name);
    const MetricsReport m = compare(c, embed(c, sealed));
    const bool ok = m.psnr >= kPsnrLow && m.psnr <= kPsnrHigh && m.image_fidelity >= kMinFidelity && m.mse <= kMaxMse;
    pass &= ok;
    ++images;
    detail += fmt("%s%s psnr=%.4f if=%.6f mse=%.6f%s", detail.empty() ? "" : "; ", name, m.psnr, m.image_fidelity,
                  m.mse, ok ? "" : " (out of band)");
  }
  return {pass && images >= 3, detail};
}

Outcome pixel_validity() {
  const int levels[] = {0, 64, 128, 192, 255};
  std::size_t written = 0, rejected = 0, wrong = 0;
  for (int a : levels)
    for (int b : levels)
      for (int c : levels)
        for (int d : levels) {
          const CoeffBlock k = forward({a, b, c, d});
          for (unsigned parity = 0; parity < 2; ++parity)
            for (unsigned v = 0; v < 512; ++v) {
              const CoeffBlock e = embed_block_bits(k, v, parity);
              // DC only translates pixels, so the block is embeddable iff the
              // span at any DC fits in 255.
              const auto px = t::idft_oracle(0, e.d01, e.d10, e.d11);
              const double span = *std::max_element(px.begin(), px.end()) - *std::min_element(px.begin(), px.end());
              const bool feasible = span <= 255.0;
              try {
                const CoeffBlock adj = readjust_dc(e);
                const InverseResult r = inverse(adj);
                const PixelBlock* p = std::get_if<PixelBlock>(&r);
                if (!feasible || !p || !p->in_range() || extract_block_bits(adj) != v) ++wrong;
                ++written;
              } catch (const UnembeddableError&) {
                if (feasible) ++wrong;
                ++rejected;
              }
            }
        }
  return {wrong == 0, fmt("%zu cases: %zu valid writes, %zu Unembeddable, %zu violations", written + rejected,
                          written, rejected, wrong)};
}

Outcome transform_oracle() {
  std::size_t failures = 0, checked = 0;
  auto check = [&](const PixelBlock& p, int shift) {
    ++checked;
    const CoeffBlock k = forward(p);
    const InverseResult r = inverse(k);
    if (!std::holds_alternative<PixelBlock>(r) || std::get<PixelBlock>(r) != p) ++failures;
    const int par = t::mod_oracle(k.d00, 2);
    if (t::mod_oracle(k.d01, 2) != par || t::mod_oracle(k.d10, 2) != par || t::mod_oracle(k.d11, 2) != par) ++failures;
    CoeffBlock shifted = k;
    shifted.d00 += 4 * shift;
    const InverseResult rs = inverse(shifted);
    const PixelBlock* q = std::get_if<PixelBlock>(&rs);
    if (!q || *q != PixelBlock{p.a + shift, p.b + shift, p.c + shift, p.d + shift}) {
      ++failures;
    } else {
      const CoeffBlock back = forward(*q);
      if (back.d01 != k.d01 || back.d10 != k.d10 || back.d11 != k.d11) ++failures;
    }
  };
  std::mt19937 rng(20240501);
  std::uniform_int_distribution<int> shift(-8, 8);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      for (int c = 0; c < 8; ++c)
        for (int d = 0; d < 8; ++d) check({a, b, c, d}, shift(rng));
  std::uniform_int_distribution<int> px(0, 255);
  for (int i = 0; i < kRandomTransformBlocks; ++i) check({px(rng), px(rng), px(rng), px(rng)}, shift(rng));
  return {failures == 0 && checked == 4096 + kRandomTransformBlocks,
          fmt("%zu blocks (4096 exhaustive + %d random), %zu failures", checked, kRandomTransformBlocks, failures)};
}

Outcome tamper_detection() {
  const PnmImage c = cover("camera.pgm");
  const SealedPayload sealed = seal_image(cover("coffee-270x270.pgm").planes[0]);
  const PnmImage stego = embed(c, sealed);
  const std::size_t carrying = (AuthHeader::bit_length + 8 * sealed.bytes.size() + 8) / 9;
  const std::size_t per_row = c.width() / 2;
  std::mt19937 rng(777);
  std::uniform_int_distribution<std::size_t> block(0, carrying - 1);
  std::uniform_int_distribution<int> corner(0, 3), sign(0, 1);
  int authentic = 0, forged = 0, malformed = 0;
  for (int trial = 0; trial < kTamperTrials; ++trial) {
    const std::size_t b = block(rng);
    const int k = corner(rng);
    const std::size_t row = 2 * (b / per_row) + k / 2, col = 2 * (b % per_row) + k % 2;
    PnmImage tampered = stego;
    auto& px = tampered.planes[0].at(row, col);
    int delta = sign(rng) ? 1 : -1;
    if (px + delta < 0 || px + delta > 255) delta = -delta;
    px = static_cast<std::uint8_t>(px + delta);
    switch (verify(tampered).status) {
      case VerdictStatus::authentic: ++authentic; break;
      case VerdictStatus::forged: ++forged; break;
      case VerdictStatus::malformed: ++malformed; break;
    }
  }
  return {authentic == 0, fmt("%d trials: %d authentic, %d forged, %d malformed", kTamperTrials, authentic, forged,
                              malformed)};
}

Outcome worked_example() {
  const PnmImage c = PnmImage::gray(ImagePlane(2, 2, Bytes{15, 36, 17, 20}));
  const Bytes bits{0b1011'1111, 0b1000'0000};  // 101 111 111
  const PnmImage s = embed_bitstream(c, bits, 9);
  const Bytes back = extract_bitstream(s, 9);
  const Bytes& px = s.planes[0].samples;
  return {px == Bytes{16, 36, 18, 20} && back == bits,
          fmt("stego block (%d,%d,%d,%d), extracted %s", px[0], px[1], px[2], px[3],
              back == bits ? "101 111 111" : "MISMATCH")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 capacity reproduction", capacity_reproduction},
      {"2 round-trip at full load", full_load_round_trip},
      {"3 quality band", quality_band},
      {"4 pixel validity", pixel_validity},
      {"5 transform oracle", transform_oracle},
      {"6 tamper detection", tamper_detection},
      {"7 worked example", worked_example},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
