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

#include "skytrack/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>
#include <thread>

#include "skytrack/cli/manifest.hpp"
#include "skytrack/cli/overlay.hpp"
#include "skytrack/core/error.hpp"
#include "skytrack/datasets/sard.hpp"
#include "skytrack/datasets/sequence.hpp"
#include "skytrack/datasets/synth.hpp"
#include "skytrack/datasets/tasks.hpp"
#include "skytrack/eval/detection.hpp"
#include "skytrack/eval/report.hpp"
#include "skytrack/eval/sweep.hpp"
#include "skytrack/eval/tracking.hpp"
#include "skytrack/orchestrator/endpoint.hpp"
#include "skytrack/orchestrator/mission.hpp"
#include "skytrack/protocol/codec.hpp"
#include "skytrack/protocol/service.hpp"
#include "skytrack/protocol/tcp.hpp"

namespace skytrack::cli {
namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot write " + file.string());
  out << text;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

void row(std::ostream& out, std::string_view key, const std::string& value) {
  out << key << std::string(key.size() < 16 ? 16 - key.size() : 1, ' ') << value << '\n';
}

protocol::TruthLookup load_truth(const fs::path& annotations) {
  if (annotations.empty()) throw Error(Errc::kBadAnnotations, "oracle mode needs --annotations");
  try {
    if (fs::is_directory(annotations)) {
      return orchestrator::sequence_truth(datasets::load_sequence(annotations));
    }
    auto images = datasets::load_sard_annotations(annotations).images;
    return [images = std::move(images)](int frame_index, const SemanticQuery&) {
      if (frame_index < 0 || static_cast<std::size_t>(frame_index) >= images.size()) {
        return std::vector<PersonAttrs>{};
      }
      return images[static_cast<std::size_t>(frame_index)].persons;
    };
  } catch (const Error& e) {
    throw Error(Errc::kBadAnnotations, annotations.string() + ": " + e.what());
  }
}

std::string_view timing_name(TimingMode mode) {
  return mode == TimingMode::kModeled ? "modeled" : "measured";
}

nlohmann::json link_json(const protocol::LinkModel& l) {
  return {{"bandwidth_bps", l.bandwidth_bps},
          {"latency_s", l.latency_s},
          {"symmetric", l.symmetric},
          {"downlink_bandwidth_bps", l.downlink_bps()},
          {"jitter_sigma_s", l.jitter_sigma_s},
          {"seed", l.seed}};
}

nlohmann::json backend_json(const backend::BackendConfig& b) {
  return {{"noise",
           {{"miss_rate", b.noise.miss_rate},
            {"spurious_rate", b.noise.spurious_rate},
            {"jitter_sigma", b.noise.jitter_sigma},
            {"verify_flip_rate", b.noise.verify_flip_rate},
            {"seed", b.noise.seed}}},
          {"margin", b.margin},
          {"timing", timing_name(b.timing)},
          {"latency", {{"stage1_s", b.latency.stage1_s}, {"stage2_s", b.latency.stage2_s}}}};
}

nlohmann::json mission_json(const orchestrator::MissionConfig& m) {
  return {{"tracker", trackers::tracker_kind_name(m.tracker)},
          {"mosse",
           {{"learning_rate", m.mosse.learning_rate},
            {"gaussian_sigma", m.mosse.gaussian_sigma},
            {"regularization", m.mosse.regularization},
            {"train_perturbations", m.mosse.train_perturbations},
            {"psr_sidelobe_exclusion", m.mosse.psr_sidelobe_exclusion},
            {"psr_saturation", m.mosse.psr_saturation},
            {"seed", m.mosse.seed}}},
          {"policy", {{"t_c", m.policy.t_c}, {"enabled", m.policy.enabled}}},
          {"link", link_json(m.link)},
          {"backend", backend_json(m.backend)},
          {"timing", timing_name(m.timing)}};
}

nlohmann::json with_effective(nlohmann::json config, nlohmann::json effective) {
  config["effective"] = std::move(effective);
  return config;
}

std::string frame_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06d.png", index);
  return buf;
}

}  // namespace

void cmd_serve(const ServeOptions& opts, const std::atomic<bool>& stop, std::ostream& out) {
  protocol::HandlerFactory factory;
  if (opts.mode == "oracle") {
    opts.backend.noise.validate();
    auto handler = protocol::make_oracle_handler(opts.backend, load_truth(opts.annotations));
    factory = [handler] { return handler; };
  } else if (opts.mode == "proxy") {
    const auto [host, port] = protocol::parse_endpoint(opts.upstream);
    factory = protocol::make_proxy_factory(host, port);
  } else {
    throw Error(Errc::kInvalidArgument, "unknown serve mode '" + opts.mode + "'");
  }
  protocol::Service service(opts.port, std::move(factory), opts.bind);
  out << "listening on " << opts.bind << ':' << service.port() << std::endl;
  service.start();
  while (!stop.load()) std::this_thread::sleep_for(std::chrono::milliseconds(50));
  service.stop();
  out << "stopped" << std::endl;
}

void cmd_track(const TrackOptions& opts, const nlohmann::json& config, std::ostream& out) {
  const auto sequence = datasets::load_sequence(opts.sequence);

  orchestrator::MissionConfig mission;
  mission.tracker = opts.tracker;
  mission.mosse.seed = opts.seed;
  mission.policy = orchestrator::ReinitPolicy::for_tracker(opts.tracker, opts.t_c);
  mission.link = opts.link;
  mission.link.seed = opts.seed;
  mission.backend = opts.backend_config;
  mission.backend.noise.seed = opts.seed;
  mission.timing = opts.timing;

  std::unique_ptr<orchestrator::BackendEndpoint> endpoint;
  if (opts.backend == "in-process") {
    endpoint = orchestrator::make_oracle_endpoint(sequence, mission.backend);
  } else {
    const auto [host, port] = protocol::parse_endpoint(opts.backend);
    endpoint = std::make_unique<orchestrator::TcpEndpoint>(host, port);
  }
  const auto log = orchestrator::run_mission(sequence, mission, *endpoint);
  const auto result = eval::miou(log, sequence);

  fs::create_directories(opts.out);
  auto effective = mission_json(mission);
  effective["sequence"] = opts.sequence.generic_string();
  effective["backend_endpoint"] = opts.backend;
  RunManifest manifest{"track", with_effective(config, std::move(effective)), {}};
  write_text(opts.out / "mission_log.json", orchestrator::mission_log_to_json(log));
  write_text(opts.out / "summary.csv", eval::tracking_csv(sequence.name(), mission.policy, result));
  write_text(opts.out / "summary.json", eval::tracking_json(sequence.name(), mission.policy, result));
  manifest.artifacts = {"mission_log.json", "summary.csv", "summary.json"};
  if (opts.overlays) {
    fs::create_directories(opts.out / "overlays");
    for (const auto& rec : log.frames) {
      const auto name = fs::path("overlays") / frame_name(rec.frame);
      std::string label(orchestrator::phase_name(rec.phase));
      if (rec.confidence) label += " " + fixed(*rec.confidence, 2);
      write_overlay(opts.out / name, *sequence.frame(static_cast<std::size_t>(rec.frame)), rec.box,
                    sequence.ground_truth()[static_cast<std::size_t>(rec.frame)], label);
      manifest.artifacts.push_back(name);
    }
  }
  write_manifest(manifest, opts.out);

  row(out, "sequence", sequence.name());
  row(out, "tracker", std::string(trackers::tracker_kind_name(opts.tracker)));
  row(out, "t_c", mission.policy.enabled ? fixed(mission.policy.t_c, 2) : "-");
  row(out, "frames", std::to_string(log.summary.frames_total));
  row(out, "mIoU", fixed(result.miou, 3));
  row(out, "FPS", fixed(result.fps, 3));
  row(out, "FPS_Edge", fixed(result.fps_edge, 3));
  row(out, "t_b", result.mean_t_b ? fixed(*result.mean_t_b, 3) + " s" : "-");
  row(out, "backend calls", std::to_string(log.summary.backend_calls));
  row(out, "reacquisitions", std::to_string(log.summary.reacquisitions));
  row(out, "log", (opts.out / "mission_log.json").string());
}

void cmd_eval(const EvalOptions& opts, const nlohmann::json& config, std::ostream& out) {
  const auto strictness = opts.lenient ? datasets::Strictness::kLenient : datasets::Strictness::kStrict;
  const auto annotations = datasets::load_sard_annotations(opts.annotations, strictness);
  auto tasks = datasets::default_sard_tasks();
  if (!opts.tasks.empty()) {
    std::vector<datasets::TaskSpec> chosen;
    for (const auto& id : opts.tasks) {
      const auto it = std::find_if(tasks.begin(), tasks.end(), [&](const auto& t) { return t.id == id; });
      if (it == tasks.end()) throw Error(Errc::kInvalidArgument, "unknown task '" + id + "'");
      chosen.push_back(*it);
    }
    tasks = std::move(chosen);
  }
  const fs::path image_dir = opts.images.empty() ? opts.annotations.parent_path() : opts.images;
  const auto result = eval::run_detection_eval(tasks, annotations.images, image_dir, opts.backend);

  fs::create_directories(opts.out);
  write_text(opts.out / "detection.csv", eval::detection_csv(result));
  write_text(opts.out / "detection.json", eval::detection_json(result));
  nlohmann::json task_ids = nlohmann::json::array();
  for (const auto& t : tasks) task_ids.push_back(t.id);
  const nlohmann::json effective = {{"annotations", opts.annotations.generic_string()},
                                    {"images", image_dir.generic_string()},
                                    {"tasks", std::move(task_ids)},
                                    {"lenient", opts.lenient},
                                    {"backend", backend_json(opts.backend)}};
  write_manifest({"eval", with_effective(config, effective), {"detection.csv", "detection.json"}}, opts.out);

  for (const auto& w : annotations.warnings) out << "warning: " << w << '\n';
  out << "task          AP      TP    FP    FN\n";
  for (const auto& t : result.tasks) {
    out << t.task << std::string(t.task.size() < 14 ? 14 - t.task.size() : 1, ' ') << fixed(t.ap, 4)
        << "  " << t.counts.tp << "  " << t.counts.fp << "  " << t.counts.fn << '\n';
  }
  row(out, "mAP", fixed(result.map, 4));
  row(out, "recall", fixed(result.recall, 4));
  row(out, "t_f", fixed(result.mean_t_f * 1000.0, 3) + " ms");
  row(out, "t_obj", result.mean_t_obj ? fixed(*result.mean_t_obj * 1000.0, 3) + " ms" : "-");
}

void cmd_sweep(const SweepOptions& opts, const nlohmann::json& config, std::ostream& out) {
  if (opts.sequences.empty()) throw Error(Errc::kInvalidArgument, "sweep needs at least one sequence");
  std::vector<datasets::Sequence> sequences;
  for (const auto& dir : opts.sequences) sequences.push_back(datasets::load_sequence(dir));

  orchestrator::MissionConfig base;
  base.tracker = opts.tracker;
  base.mosse.seed = opts.seed;
  base.link = opts.link;
  base.link.seed = opts.seed;
  base.backend = opts.backend;
  base.backend.noise.seed = opts.seed;
  base.timing = opts.timing;
  const auto result = eval::run_sweep(sequences, base, opts.workers);

  fs::create_directories(opts.out);
  write_text(opts.out / "sweep.csv", eval::sweep_csv(result));
  write_text(opts.out / "sweep.json", eval::sweep_json(result));
  auto effective = mission_json(base);
  effective.erase("policy");
  effective["thresholds"] = eval::sweep_thresholds();
  nlohmann::json dirs = nlohmann::json::array();
  for (const auto& d : opts.sequences) dirs.push_back(d.generic_string());
  effective["sequences"] = std::move(dirs);
  write_manifest({"sweep", with_effective(config, std::move(effective)), {"sweep.csv", "sweep.json"}},
                 opts.out);

  out << "t_c    mIoU    FPS      FPS_Edge  calls\n";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& r = result.rows[i];
    out << fixed(r.t_c, 2) << "   " << fixed(r.miou, 4) << "  " << fixed(r.fps, 3) << "  "
        << fixed(r.fps_edge, 3) << "  " << fixed(r.backend_calls, 1)
        << (i == result.selected ? "  <- t_c,opt" : "") << '\n';
  }
}

void cmd_synth(const SynthOptions& opts, const nlohmann::json& config, std::ostream& out) {
  fs::create_directories(opts.out);
  if (opts.kind == "sard") {
    const auto images = datasets::synth_sard(opts.sard_images, opts.sard_persons, opts.seed);
    datasets::write_sard_annotations(opts.out / "annotations.json", images);
    const nlohmann::json effective = {{"kind", opts.kind},
                                      {"images", opts.sard_images},
                                      {"persons_per_image", opts.sard_persons},
                                      {"seed", opts.seed}};
    write_manifest({"synth", with_effective(config, effective), {"annotations.json"}}, opts.out);
    out << "wrote " << images.size() << " annotated images to " << (opts.out / "annotations.json").string()
        << '\n';
    return;
  }
  datasets::SynthSpec spec;
  if (opts.kind == "translation") {
    spec = datasets::translation_fixture(opts.seed);
  } else if (opts.kind == "occlusion") {
    spec = datasets::occlusion_fixture(opts.seed);
  } else if (opts.kind == "static") {
    spec = datasets::static_fixture(opts.seed);
  } else {
    throw Error(Errc::kInvalidArgument, "unknown synth kind '" + opts.kind + "'");
  }
  if (opts.frames) spec.frames = *opts.frames;
  const auto sequence = datasets::synth_sequence(spec, opts.out);
  const nlohmann::json effective = {{"kind", opts.kind}, {"frames", spec.frames}, {"seed", spec.seed}};
  RunManifest manifest{"synth", with_effective(config, effective), {"groundtruth.txt", "query.txt"}};
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "%06zu.png", i);
    manifest.artifacts.push_back(fs::path("frames") / name);
  }
  write_manifest(manifest, opts.out);
  out << "wrote " << sequence.size() << " frames to " << opts.out.string() << '\n';
}

bool cmd_protocol_check(const ProtocolCheckOptions& opts, std::ostream& out) {
  std::vector<fs::path> files;
  if (fs::is_directory(opts.fixtures)) {
    for (const auto& e : fs::directory_iterator(opts.fixtures)) {
      if (e.is_regular_file() && e.path().extension() == ".bin") files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(Errc::kMissingFile, "no .bin fixtures in " + opts.fixtures.string());

  bool ok = true;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), {}};
    try {
      const auto msg = protocol::decode(bytes);
      const bool same = protocol::encode(msg) == bytes;
      ok = ok && same;
      out << (same ? "OK   " : "FAIL ") << file.filename().string() << " (" << protocol::variant_name(msg)
          << (same ? ")" : ") re-encoding differs") << '\n';
    } catch (const Error& e) {
      ok = false;
      out << "FAIL " << file.filename().string() << ": " << e.what() << '\n';
    }
  }
  if (!opts.endpoint.empty()) {
    const auto [host, port] = protocol::parse_endpoint(opts.endpoint);
    protocol::TcpClient client(host, port);
    const auto reply = client.exchange(protocol::Ping{42});
    const auto* pong = std::get_if<protocol::Pong>(&reply);
    const bool alive = pong && pong->request_id == 42;
    ok = ok && alive;
    out << (alive ? "OK   " : "FAIL ") << "ping " << opts.endpoint << '\n';
  }
  return ok;
}

}  // namespace skytrack::cli
