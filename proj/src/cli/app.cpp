/*
 * Copyright 2026 The SkyTrack Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "skytrack/cli/app.hpp"

#include <algorithm>
#include <atomic>
#include <csignal>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <sodium.h>

#include "skytrack/cli/commands.hpp"
#include "skytrack/core/error.hpp"

namespace skytrack::cli {
namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop.store(true); }

const std::map<std::string, trackers::TrackerKind> kTrackers{
    {"mosse", trackers::TrackerKind::kMosse},
    {"ncc", trackers::TrackerKind::kNcc},
    {"static", trackers::TrackerKind::kStatic},
};

const std::map<std::string, TimingMode> kTimings{
    {"modeled", TimingMode::kModeled},
    {"measured", TimingMode::kMeasured},
};

void add_link_options(CLI::App* cmd, protocol::LinkModel& link) {
  cmd->add_option("--link.bandwidth", link.bandwidth_bps, "Uplink bandwidth in bit/s")
      ->capture_default_str();
  cmd->add_option("--link.latency", link.latency_s, "One-way latency in seconds")->capture_default_str();
  cmd->add_option("--link.downlink-bandwidth", link.downlink_bandwidth_bps,
                  "Downlink bandwidth in bit/s (makes the link asymmetric)")
      ->each([&link](const std::string&) { link.symmetric = false; });
  cmd->add_option("--link.jitter", link.jitter_sigma_s, "Latency jitter sigma in seconds")
      ->capture_default_str();
}

void add_backend_options(CLI::App* cmd, backend::BackendConfig& cfg) {
  cmd->add_option("--noise.miss-rate", cfg.noise.miss_rate, "Stage-1 miss probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--noise.spurious-rate", cfg.noise.spurious_rate, "Expected spurious boxes per frame")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--noise.jitter", cfg.noise.jitter_sigma, "Box corner jitter sigma in pixels")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--noise.flip-rate", cfg.noise.verify_flip_rate, "Stage-2 verdict flip probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--margin", cfg.margin, "Crop margin in pixels")->capture_default_str();
  cmd->add_option("--latency.stage1", cfg.latency.stage1_s, "Detector latency per frame in seconds")
      ->capture_default_str();
  cmd->add_option("--latency.stage2", cfg.latency.stage2_s, "Verifier latency per call in seconds")
      ->capture_default_str();
  cmd->add_option("--backend-timing", cfg.timing, "Back-end timing: modeled or measured")
      ->transform(CLI::CheckedTransformer(kTimings, CLI::ignore_case))
      ->default_str("modeled");
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::kMissingFile:
    case Errc::kLineCountMismatch:
    case Errc::kMalformedBox:
    case Errc::kNoTarget:
    case Errc::kSchemaViolation:
    case Errc::kSpecOutOfBounds:
    case Errc::kBadAnnotations:
    case Errc::kFrameCountMismatch:
      return 3;
    case Errc::kPayloadTooLarge:
    case Errc::kBadFrame:
    case Errc::kBadPayload:
    case Errc::kUnknownVariant:
    case Errc::kBindFailure:
    case Errc::kMissionAborted:
    case Errc::kConnectionFailure:
      return 4;
    case Errc::kInvalidArgument:
    case Errc::kSweepNotApplicable:
      return 2;
    default:
      return 1;
  }
}

int report(std::ostream& err, bool json, std::string_view code, const std::string& message, int exit_code) {
  if (json) {
    err << nlohmann::json{{"error", {{"code", code}, {"message", message}, {"exit_code", exit_code}}}}.dump()
        << '\n';
  } else {
    err << "skytrack: " << message << '\n';
  }
  return exit_code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (sodium_init() < 0) return report(err, false, "Internal", "libsodium failed to initialize", 1);

  CLI::App app{"Semantic search-and-track: edge tracker, detection back-end and evaluation harness",
               "skytrack"};
  app.set_config("--config", "", "TOML file with option defaults (command-line flags take precedence)");
  app.require_subcommand(1);
  app.fallthrough();
  bool json_errors = false;
  std::uint64_t seed = 0;
  app.add_flag("--json", json_errors, "Print errors as JSON on stderr");
  app.add_option("--seed", seed, "Seed for every stochastic component")
      ->envname("SKYTRACK_SEED")
      ->capture_default_str();

  ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the wire protocol (oracle or proxy back-end)");
  serve_cmd->add_option("--port", serve.port, "TCP port (0 picks a free one)")->capture_default_str();
  serve_cmd->add_option("--bind", serve.bind, "Bind address")->capture_default_str();
  serve_cmd->add_option("--mode", serve.mode, "oracle or proxy")
      ->check(CLI::IsMember({"oracle", "proxy"}))
      ->capture_default_str();
  serve_cmd->add_option("--annotations", serve.annotations, "SARD JSON file or sequence directory");
  serve_cmd->add_option("--upstream", serve.upstream, "host:port of the back-end to relay to");
  add_backend_options(serve_cmd, serve.backend);

  TrackOptions track;
  auto* track_cmd = app.add_subcommand("track", "Run one mission over a sequence");
  track_cmd->add_option("sequence", track.sequence, "Sequence directory")->required();
  track_cmd->add_option("--out", track.out, "Output directory")->required();
  track_cmd->add_option("--tracker", track.tracker, "mosse, ncc or static")
      ->transform(CLI::CheckedTransformer(kTrackers, CLI::ignore_case))
      ->default_str("mosse");
  track_cmd->add_option("--t-c", track.t_c, "Re-initialization confidence threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  track_cmd->add_option("--backend", track.backend, "in-process or host:port")->capture_default_str();
  track_cmd->add_option("--timing", track.timing, "Front-end timing: modeled or measured")
      ->transform(CLI::CheckedTransformer(kTimings, CLI::ignore_case))
      ->default_str("modeled");
  bool no_overlays = false;
  track_cmd->add_flag("--no-overlays", no_overlays, "Skip the per-frame overlay images");
  add_link_options(track_cmd, track.link);
  add_backend_options(track_cmd, track.backend_config);

  EvalOptions eval_opts;
  auto* eval_cmd = app.add_subcommand("eval", "Detection AP/mAP over attribute-annotated images");
  eval_cmd->add_option("annotations", eval_opts.annotations, "SARD JSON file")->required();
  eval_cmd->add_option("--images", eval_opts.images, "Image directory (default: next to the annotations)");
  eval_cmd->add_option("--out", eval_opts.out, "Output directory")->required();
  eval_cmd->add_option("--task", eval_opts.tasks, "Task id to evaluate (repeatable; default all)");
  eval_cmd->add_flag("--lenient", eval_opts.lenient, "Warn instead of failing on injury/pose conflicts");
  add_backend_options(eval_cmd, eval_opts.backend);

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep t_c over 0.30..0.95");
  sweep_cmd->add_option("sequences", sweep.sequences, "Sequence directories")->required();
  sweep_cmd->add_option("--out", sweep.out, "Output directory")->required();
  sweep_cmd->add_option("--tracker", sweep.tracker, "mosse or ncc")
      ->transform(CLI::CheckedTransformer(kTrackers, CLI::ignore_case))
      ->default_str("mosse");
  sweep_cmd->add_option("--workers", sweep.workers, "Worker threads (0 = all cores)")->capture_default_str();
  sweep_cmd->add_option("--timing", sweep.timing, "Front-end timing: modeled or measured")
      ->transform(CLI::CheckedTransformer(kTimings, CLI::ignore_case))
      ->default_str("modeled");
  add_link_options(sweep_cmd, sweep.link);
  add_backend_options(sweep_cmd, sweep.backend);

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic fixture");
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();
  synth_cmd->add_option("--kind", synth.kind, "translation, occlusion, static or sard")
      ->check(CLI::IsMember({"translation", "occlusion", "static", "sard"}))
      ->capture_default_str();
  synth_cmd->add_option("--frames", synth.frames, "Frame count override");
  synth_cmd->add_option("--sard-images", synth.sard_images, "Images for --kind sard")->capture_default_str();
  synth_cmd->add_option("--sard-persons", synth.sard_persons, "Persons per image for --kind sard")
      ->capture_default_str();

  ProtocolCheckOptions check;
  auto* check_cmd = app.add_subcommand("protocol-check", "Verify golden message fixtures round-trip");
  check_cmd->add_option("fixtures", check.fixtures, "Directory of .bin fixtures")->required();
  check_cmd->add_option("--endpoint", check.endpoint, "host:port of a live service to ping");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    return report(err, json_errors || std::find(args.begin(), args.end(), "--json") != args.end(),
                  "UsageError", e.what(), 2);
  }

  const nlohmann::json config = {{"args", args}, {"seed", seed}};
  try {
    if (serve_cmd->parsed()) {
      serve.backend.noise.seed = seed;
      g_stop.store(false);
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      cmd_serve(serve, g_stop, out);
    } else if (track_cmd->parsed()) {
      track.seed = seed;
      track.overlays = !no_overlays;
      cmd_track(track, config, out);
    } else if (eval_cmd->parsed()) {
      eval_opts.backend.noise.seed = seed;
      cmd_eval(eval_opts, config, out);
    } else if (sweep_cmd->parsed()) {
      sweep.seed = seed;
      cmd_sweep(sweep, config, out);
    } else if (synth_cmd->parsed()) {
      synth.seed = seed;
      cmd_synth(synth, config, out);
    } else if (check_cmd->parsed()) {
      if (!cmd_protocol_check(check, out)) {
        return report(err, json_errors, "ProtocolCheckFailed", "one or more fixtures failed", 4);
      }
    }
  } catch (const Error& e) {
    return report(err, json_errors, errc_name(e.code()), e.what(), exit_code_for(e.code()));
  } catch (const std::exception& e) {
    return report(err, json_errors, "Internal", e.what(), 1);
  }
  return 0;
}

}  // namespace skytrack::cli
