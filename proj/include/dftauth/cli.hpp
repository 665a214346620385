#pragma once

// Command-line front end: embed, extract, verify, capacity, metrics.
//
// Exit codes: 0 success (verify: authentic), 1 forged, 2 malformed or any
// usage / I/O / embedding error. Output is "key: value" lines on stdout;
// diagnostics are a single "error: ..." line on stderr.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <ostream>
#include <string>

#include "dftauth/auth.hpp"
#include "dftauth/codec.hpp"
#include "dftauth/metrics.hpp"
#include "dftauth/pnm.hpp"

namespace dftauth::cli {

enum ExitCode : int { kOk = 0, kForged = 1, kFailure = 2 };

inline std::string format_metric(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

inline void print_header(std::ostream& out, const AuthHeader& h) {
  out << "width: " << h.payload_width << '\n'
      << "height: " << h.payload_height << '\n'
      << "digest: " << h.digest.hex() << '\n';
}

inline bool wants_image_output(const std::filesystem::path& out, const AuthHeader& h) {
  const auto ext = out.extension().string();
  if (ext == ".pgm" || ext == ".pnm") return true;
  return h.payload_height > 1;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Embed, extract and verify authenticating payloads in PNM images"};
  app.require_subcommand(1);

  std::string cover, payload, message_file, stego, output, image_a, image_b;

  auto* embed_cmd = app.add_subcommand("embed", "Hide a payload and its digest in a cover image");
  embed_cmd->add_option("--cover", cover, "Cover PGM/PPM")->required();
  auto* payload_opt = embed_cmd->add_option("--payload", payload, "Gray image payload (PGM)");
  auto* message_opt = embed_cmd->add_option("--message-file", message_file, "Raw byte message payload");
  payload_opt->excludes(message_opt);
  embed_cmd->add_option("--out", output, "Stego image to write")->required();

  auto* extract_cmd = app.add_subcommand("extract", "Recover the hidden payload");
  extract_cmd->add_option("--stego", stego, "Stego image")->required();
  extract_cmd->add_option("--out", output, "Payload file to write")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Check that a stego image carries an intact payload");
  verify_cmd->add_option("--stego", stego, "Stego image")->required();

  auto* capacity_cmd = app.add_subcommand("capacity", "Report embedding capacity of a cover");
  capacity_cmd->add_option("--cover", cover, "Cover PGM/PPM")->required();

  auto* metrics_cmd = app.add_subcommand("metrics", "MSE, PSNR and image fidelity between two images");
  metrics_cmd->add_option("--a", image_a, "Reference (cover) image")->required();
  metrics_cmd->add_option("--b", image_b, "Distorted (stego) image")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }

  try {
    if (embed_cmd->parsed()) {
      if (payload.empty() == message_file.empty()) {
        err << "error: embed needs exactly one of --payload or --message-file\n";
        return kFailure;
      }
      const PnmImage cover_image = load_pnm(cover);
      SealedPayload sealed;
      if (!payload.empty()) {
        const PnmImage p = load_pnm(payload);
        if (p.kind != PnmKind::gray) throw PnmError("--payload must be a gray (PGM) image");
        sealed = seal_image(p.planes.front());
      } else {
        sealed = seal_message(read_file(message_file));
      }
      save_pnm(output, embed(cover_image, sealed));
      out << "capacity: " << capacity_bits(cover_image) / 8 << " bytes\n"
          << "payload capacity: " << payload_capacity_bytes(cover_image) << " bytes\n"
          << "used: " << AuthHeader::bit_length / 8 + sealed.bytes.size() << " bytes\n";
      print_header(out, sealed.header);
      return kOk;
    }

    if (extract_cmd->parsed()) {
      const Extracted x = extract(load_pnm(stego));
      if (wants_image_output(output, x.header))
        save_pnm(output, PnmImage::gray(ImagePlane(x.header.payload_width, x.header.payload_height, x.payload)));
      else
        write_file(output, x.payload);
      print_header(out, x.header);
      out << "recomputed: " << digest(x.payload).hex() << '\n';
      return kOk;
    }

    if (verify_cmd->parsed()) {
      const Verdict v = verify(load_pnm(stego));
      out << "status: " << to_string(v.status) << '\n';
      if (v.header) {
        out << "width: " << v.header->payload_width << '\n' << "height: " << v.header->payload_height << '\n';
      }
      if (v.extracted_digest) out << "extracted: " << v.extracted_digest->hex() << '\n';
      if (v.recomputed_digest) out << "recomputed: " << v.recomputed_digest->hex() << '\n';
      if (v.first_violation)
        out << "altered blocks: " << v.parity_violations << '\n'
            << "first altered block: plane " << v.first_violation->plane << ", row " << v.first_violation->row
            << ", col " << v.first_violation->col << '\n';
      if (!v.reason.empty()) out << "reason: " << v.reason << '\n';
      switch (v.status) {
        case VerdictStatus::authentic: return kOk;
        case VerdictStatus::forged: return kForged;
        case VerdictStatus::malformed: return kFailure;
      }
    }

    if (capacity_cmd->parsed()) {
      const PnmImage image = load_pnm(cover);
      out << "total: " << capacity_bits(image) / 8 << " bytes, payload: " << payload_capacity_bytes(image)
          << " bytes\n"
          << "bits: " << capacity_bits(image) << '\n';
      return kOk;
    }

    if (metrics_cmd->parsed()) {
      const MetricsReport m = compare(load_pnm(image_a), load_pnm(image_b));
      out << "mse: " << format_metric(m.mse) << '\n'
          << "psnr: " << format_metric(m.psnr) << '\n'
          << "if: " << format_metric(m.image_fidelity) << '\n';
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace dftauth::cli
