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

#include "skytrack/backend/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "skytrack/core/error.hpp"

namespace skytrack::backend {
namespace {

bool unit(double v) { return v >= 0.0 && v <= 1.0; }

BBox jitter_box(const BBox& box, double sigma, const Frame& frame, std::mt19937_64& rng) {
  if (sigma <= 0.0) return box;
  std::normal_distribution<double> noise(0.0, sigma);
  double x0 = box.x + noise(rng);
  double y0 = box.y + noise(rng);
  double x1 = box.right() + noise(rng);
  double y1 = box.bottom() + noise(rng);
  const double fw = frame.width;
  const double fh = frame.height;
  x0 = std::clamp(x0, 0.0, fw - 1.0);
  y0 = std::clamp(y0, 0.0, fh - 1.0);
  x1 = std::clamp(std::max(x1, x0 + 1.0), x0 + 1.0, fw);
  y1 = std::clamp(std::max(y1, y0 + 1.0), y0 + 1.0, fh);
  return {x0, y0, x1 - x0, y1 - y0};
}

std::string describe(const AttributePredicate& predicate, const PersonAttrs& attrs) {
  std::string out;
  auto clause = [&out](const std::string& text) {
    if (!out.empty()) out += "; ";
    out += text;
  };
  if (predicate.shirt_color) {
    const bool ok = *predicate.shirt_color == attrs.shirt_color;
    clause("shirt color " + attrs.shirt_color + (ok ? " matches " : " does not match ") +
           *predicate.shirt_color);
  }
  if (predicate.pose) {
    const bool ok = *predicate.pose == attrs.pose;
    clause("pose " + std::string(pose_name(attrs.pose)) +
           (ok ? " matches " : " does not match ") + std::string(pose_name(*predicate.pose)));
  }
  if (predicate.injured) {
    clause(attrs.effectively_injured() ? "person appears to need help"
                                       : "person does not appear to need help");
  }
  if (out.empty()) clause("a person is visible");
  return out;
}

}  // namespace

void OracleNoise::validate() const {
  if (!unit(miss_rate) || !unit(verify_flip_rate) || spurious_rate < 0.0 ||
      jitter_sigma < 0.0 || !std::isfinite(spurious_rate) || !std::isfinite(jitter_sigma)) {
    throw Error(Errc::kInvalidArgument, "oracle noise parameters out of range");
  }
}

std::vector<Proposal> propose(const Frame& frame, std::string_view /*superset_class*/,
                              std::span<const PersonAttrs> truth, const OracleNoise& noise,
                              std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<Proposal> out;
  out.reserve(truth.size());
  for (const auto& person : truth) {
    const bool missed = u01(rng) < noise.miss_rate;
    const double score = 0.5 + 0.5 * u01(rng);
    if (missed) continue;
    Proposal p;
    p.detection.box = jitter_box(person.box, noise.jitter_sigma, frame, rng);
    p.detection.detector_score = score;
    p.source = person;
    out.push_back(std::move(p));
  }

  if (noise.spurious_rate > 0.0) {
    std::poisson_distribution<int> count(noise.spurious_rate);
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      double w = frame.width / 8.0;
      double h = frame.height / 4.0;
      if (!truth.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, truth.size() - 1);
        const auto& donor = truth[pick(rng)].box;
        w = donor.w;
        h = donor.h;
      }
      w = std::clamp(w, 1.0, static_cast<double>(frame.width));
      h = std::clamp(h, 1.0, static_cast<double>(frame.height));
      std::uniform_real_distribution<double> px(0.0, frame.width - w);
      std::uniform_real_distribution<double> py(0.0, frame.height - h);
      Proposal p;
      p.detection.box = {px(rng), py(rng), w, h};
      p.detection.detector_score = 0.5 * u01(rng);
      out.push_back(std::move(p));
    }
  }
  return out;
}

Verdict verify(const ImagePatch& /*patch*/, const SemanticQuery& query,
               const std::optional<PersonAttrs>& attrs, const OracleNoise& noise,
               std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const bool flip = u01(rng) < noise.verify_flip_rate;

  bool truth_verdict = false;
  std::string detail;
  if (attrs) {
    truth_verdict = predicate_match(query.predicate, *attrs);
    detail = describe(query.predicate, *attrs);
  } else {
    detail = "no " + query.superset_class + " in the crop";
  }
  Verdict v;
  v.verified = truth_verdict != flip;
  v.justification = (v.verified ? "yes: " : "no: ") + detail;
  if (flip) v.justification += "; verdict inverted by verifier noise";
  return v;
}

DetectResult detect(const Frame& frame, const SemanticQuery& query,
                    std::span<const PersonAttrs> truth, const BackendConfig& config) {
  config.noise.validate();
  const bool measured = config.timing == TimingMode::kMeasured;
  const Stopwatch frame_clock;
  std::mt19937_64 rng(mix_seed(config.noise.seed, static_cast<std::uint64_t>(frame.index)));

  DetectResult result;
  auto& t = result.timings;

  const Stopwatch propose_clock;
  auto proposals = propose(frame, query.superset_class, truth, config.noise, rng);
  t.stages.propose = config.latency.stage1_s + (measured ? propose_clock.seconds() : 0.0);

  for (auto& proposal : proposals) {
    const Stopwatch crop_clock;
    std::optional<ImagePatch> patch;
    try {
      patch = crop_with_margin(frame, proposal.detection.box, config.margin);
    } catch (const Error& e) {
      if (e.code() != Errc::kNoOverlap) throw;
    }
    if (measured) t.stages.crop += crop_clock.seconds();
    if (!patch) continue;

    const Stopwatch verify_clock;
    auto verdict = verify(*patch, query, proposal.source, config.noise, rng);
    t.stages.verify += config.latency.stage2_s + (measured ? verify_clock.seconds() : 0.0);
    ++t.stage2_calls;
    if (!verdict.verified) continue;
    proposal.detection.verified = true;
    proposal.detection.justification = std::move(verdict.justification);
    result.detections.push_back(std::move(proposal.detection));
  }

  const double staged = t.stages.propose + t.stages.crop + t.stages.verify;
  const double emulated = config.latency.stage1_s + config.latency.stage2_s * t.stage2_calls;
  t.t_f = measured ? std::max(staged, frame_clock.seconds() + emulated) : staged;
  if (t.stage2_calls > 0) t.t_obj = t.stages.verify / t.stage2_calls;
  return result;
}

}  // namespace skytrack::backend
