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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "mission_checks.hpp"
#include "oracles.hpp"
#include "skytrack/core/error.hpp"
#include "skytrack/datasets/synth.hpp"
#include "skytrack/datasets/tasks.hpp"
#include "skytrack/eval/detection.hpp"
#include "skytrack/eval/report.hpp"
#include "skytrack/eval/sweep.hpp"
#include "skytrack/eval/tracking.hpp"

namespace skytrack::eval {
namespace {

using orchestrator::FrameRecord;
using orchestrator::MissionLog;
using orchestrator::Phase;
using testing::Gen;
using trackers::TrackerKind;

Detection pred(BBox b, double score) { return {b, score, true, ""}; }

MissionLog log_with(const std::vector<std::optional<BBox>>& boxes) {
  MissionLog log;
  log.sequence = "hand";
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    FrameRecord r;
    r.frame = static_cast<int>(i);
    r.box = boxes[i];
    if (r.box) r.confidence = 1.0;
    r.phase = r.box ? Phase::kTracking : Phase::kSearching;
    r.timestamp = static_cast<double>(i) / 10.0;
    r.edge_step_time = 0.01;
    r.completed_at = r.timestamp + 0.01;
    log.frames.push_back(r);
  }
  log.summary.frames_total = static_cast<int>(boxes.size());
  log.summary.total_time = static_cast<double>(boxes.size()) / 10.0;
  return log;
}

orchestrator::MissionConfig mosse_config(double t_c = 0.7) {
  orchestrator::MissionConfig c;
  c.tracker = TrackerKind::kMosse;
  c.policy = orchestrator::ReinitPolicy::for_tracker(c.tracker, t_c);
  return c;
}

// ---------------------------------------------------------------------------
// mIoU
// ---------------------------------------------------------------------------

TEST(Miou, PerfectLogIsOne) {
  const std::vector<std::optional<BBox>> gt{BBox{0, 0, 10, 10}, BBox{1, 1, 5, 5}};
  EXPECT_DOUBLE_EQ(evaluate_tracking(log_with(gt), gt).miou, 1.0);
}

TEST(Miou, HandCaseFourNinths) {
  const std::vector<std::optional<BBox>> gt{BBox{0, 0, 10, 10}, BBox{0, 0, 10, 10}, BBox{0, 0, 10, 10}};
  const std::vector<std::optional<BBox>> boxes{BBox{0, 0, 10, 10}, BBox{5, 0, 10, 10}, std::nullopt};
  const auto r = evaluate_tracking(log_with(boxes), gt);
  EXPECT_NEAR(r.miou, 4.0 / 9.0, 1e-12);
  ASSERT_EQ(r.per_frame_iou.size(), 3u);
  EXPECT_NEAR(r.per_frame_iou[1], 1.0 / 3.0, 1e-12);
  EXPECT_EQ(r.gt_frames, 3);
}

TEST(Miou, NeverInitializedIsZero) {
  const std::vector<std::optional<BBox>> gt{BBox{0, 0, 10, 10}, BBox{0, 0, 10, 10}};
  EXPECT_EQ(evaluate_tracking(log_with({std::nullopt, std::nullopt}), gt).miou, 0.0);
}

TEST(Miou, AbsentTruthWithBoxIsCountedNotAveraged) {
  const std::vector<std::optional<BBox>> gt{BBox{0, 0, 10, 10}, std::nullopt};
  const auto r = evaluate_tracking(log_with({BBox{0, 0, 10, 10}, BBox{3, 3, 3, 3}}), gt);
  EXPECT_DOUBLE_EQ(r.miou, 1.0);
  EXPECT_EQ(r.gt_frames, 1);
  EXPECT_EQ(r.absent_gt_with_box, 1);
}

TEST(Miou, FrameCountMismatch) {
  const std::vector<std::optional<BBox>> gt{BBox{0, 0, 10, 10}};
  try {
    evaluate_tracking(log_with({std::nullopt, std::nullopt}), gt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kFrameCountMismatch);
  }
}

TEST(Miou, RatesFromLog) {
  auto log = log_with({BBox{0, 0, 1, 1}, BBox{0, 0, 1, 1}, BBox{0, 0, 1, 1}, BBox{0, 0, 1, 1}});
  log.summary.total_time = 2.0;
  log.frames[1].t_b = 0.3;
  log.frames[3].t_b = 0.5;
  const std::vector<std::optional<BBox>> gt(4, BBox{0, 0, 1, 1});
  const auto r = evaluate_tracking(log, gt);
  EXPECT_DOUBLE_EQ(r.fps, 2.0);
  EXPECT_DOUBLE_EQ(r.fps_edge, 4.0 / 0.04);
  ASSERT_TRUE(r.mean_t_b);
  EXPECT_DOUBLE_EQ(*r.mean_t_b, 0.4);
  EXPECT_FALSE(evaluate_tracking(log_with({std::nullopt}), {std::nullopt}).mean_t_b);
}

TEST(MiouProperty, ScaleInvariant) {
  Gen g(51);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = g.integer(1, 20);
    std::vector<std::optional<BBox>> gt, boxes;
    for (int i = 0; i < n; ++i) {
      gt.push_back(g.coin(0.9) ? std::optional<BBox>(g.box()) : std::nullopt);
      boxes.push_back(g.coin(0.8) ? std::optional<BBox>(gt.back() && g.coin() ? BBox{gt.back()->x + g.real(-5, 5), gt.back()->y, gt.back()->w, gt.back()->h + g.real(0, 4)} : g.box())
                                  : std::nullopt);
    }
    const double s = g.real(0.1, 10);
    auto scale = [s](std::vector<std::optional<BBox>> v) {
      for (auto& b : v) {
        if (b) *b = {b->x * s, b->y * s, b->w * s, b->h * s};
      }
      return v;
    };
    const auto a = evaluate_tracking(log_with(boxes), gt).miou;
    const auto b = evaluate_tracking(log_with(scale(boxes)), scale(gt)).miou;
    EXPECT_NEAR(a, b, 1e-12);
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
  }
}

// ---------------------------------------------------------------------------
// Average precision
// ---------------------------------------------------------------------------

TEST(AveragePrecision, PerfectDetectorIsOne) {
  const std::vector<BBox> truths{{0, 0, 10, 10}, {50, 50, 10, 10}};
  const std::vector<Detection> preds{pred({0, 0, 10, 10}, 0.4), pred({50, 50, 10, 10}, 0.8)};
  EXPECT_DOUBLE_EQ(average_precision(preds, truths), 1.0);
}

TEST(AveragePrecision, TotalMissIsZero) {
  const std::vector<BBox> truths{{0, 0, 10, 10}};
  const std::vector<Detection> preds{pred({100, 100, 10, 10}, 0.9)};
  EXPECT_DOUBLE_EQ(average_precision(preds, truths), 0.0);
}

TEST(AveragePrecision, HandCaseFiveSixths) {
  const std::vector<BBox> truths{{0, 0, 10, 10}, {50, 50, 10, 10}};
  const std::vector<Detection> preds{pred({0, 0, 10, 10}, 0.9), pred({200, 200, 10, 10}, 0.8),
                                     pred({50, 50, 10, 10}, 0.7)};
  EXPECT_NEAR(average_precision(preds, truths), 1.0 * 0.5 + (2.0 / 3.0) * 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(average_precision(preds, truths), 5.0 / 6.0);
}

TEST(AveragePrecision, EmptyConventions) {
  EXPECT_EQ(average_precision(std::span<const Detection>{}, std::span<const BBox>{}), 1.0);
  const std::vector<Detection> preds{pred({0, 0, 1, 1}, 0.5)};
  EXPECT_EQ(average_precision(preds, std::span<const BBox>{}), 0.0);
  const std::vector<BBox> truths{{0, 0, 1, 1}};
  EXPECT_EQ(average_precision(std::span<const Detection>{}, truths), 0.0);
}

TEST(AveragePrecision, DuplicateDetectionIsFalsePositive) {
  const std::vector<BBox> truths{{0, 0, 10, 10}};
  const std::vector<Detection> preds{pred({0, 0, 10, 10}, 0.9), pred({0, 0, 10, 10}, 0.8)};
  EXPECT_DOUBLE_EQ(average_precision(preds, truths), 1.0);
  const std::vector<DetectionSample> samples{{preds, truths}};
  const auto c = match_counts(samples);
  EXPECT_EQ(c.tp, 1);
  EXPECT_EQ(c.fp, 1);
  EXPECT_EQ(c.fn, 0);
}


std::vector<DetectionSample> random_samples(Gen& g, std::vector<testing::ApImage>& oracle) {
  std::vector<DetectionSample> samples;
  oracle.clear();
  const int images = g.integer(1, 3);
  int budget = 8;
  for (int i = 0; i < images; ++i) {
    DetectionSample s;
    testing::ApImage o;
    const int nt = g.integer(0, 4);
    for (int t = 0; t < nt; ++t) s.truths.push_back(g.int_box(40, 4, 16));
    const int np = std::min(budget, g.integer(0, 5));
    budget -= np;
    for (int p = 0; p < np; ++p) {
      BBox b = g.int_box(40, 4, 16);
      if (!s.truths.empty() && g.coin(0.6)) {
        const BBox& t = s.truths[static_cast<std::size_t>(g.integer(0, nt - 1))];
        b = {t.x + g.integer(-3, 3), t.y + g.integer(-3, 3), t.w + g.integer(-2, 2), t.h};
      }
      // Coarse scores produce ties, which must keep input order.
      const double score = g.integer(0, 4) / 4.0;
      s.predictions.push_back(pred(b, score));
      o.predictions.emplace_back(b, score);
    }
    o.truths = s.truths;
    samples.push_back(s);
    oracle.push_back(o);
  }
  return samples;
}

TEST(AveragePrecisionProperty, MatchesPrefixEnumeration) {
  Gen g(52);
  std::vector<testing::ApImage> oracle;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto samples = random_samples(g, oracle);
    EXPECT_NEAR(average_precision(samples), testing::brute_force_ap(oracle), 1e-9) << trial;
  }
}

TEST(AveragePrecisionProperty, OnlyRankMatters) {
  Gen g(53);
  std::vector<testing::ApImage> oracle;
  for (int trial = 0; trial < 500; ++trial) {
    auto samples = random_samples(g, oracle);
    const double before = average_precision(samples);
    for (auto& s : samples) {
      for (auto& p : s.predictions) p.detector_score = std::exp(3.0 * p.detector_score) - 7.0;
    }
    EXPECT_DOUBLE_EQ(average_precision(samples), before);
  }
}

// ---------------------------------------------------------------------------
// Detection evaluation
// ---------------------------------------------------------------------------

TEST(DetectionEval, NoiselessOracleIsPerfect) {
  const auto images = datasets::synth_sard(20, 6, 54);
  const auto r = run_detection_eval(datasets::default_sard_tasks(), images, "/nonexistent", {});
  ASSERT_EQ(r.tasks.size(), 8u);
  for (const auto& t : r.tasks) {
    EXPECT_DOUBLE_EQ(t.ap, 1.0) << t.task;
    EXPECT_EQ(t.counts.fp, 0);
    EXPECT_EQ(t.counts.fn, 0);
    EXPECT_EQ(t.images, 20);
  }
  EXPECT_DOUBLE_EQ(r.map, 1.0);
  EXPECT_DOUBLE_EQ(r.recall, 1.0);
  EXPECT_GT(r.mean_t_f, 0.0);
  ASSERT_TRUE(r.mean_t_obj);
}

TEST(DetectionEval, HalfMissRateHalvesRecall) {
  const auto images = datasets::synth_sard(400, 10, 55);
  backend::BackendConfig c;
  c.noise.miss_rate = 0.5;
  c.noise.seed = 9;
  const auto tasks = std::vector<datasets::TaskSpec>{datasets::default_sard_tasks()[0]};
  const auto r = run_detection_eval(tasks, images, "/nonexistent", c);
  EXPECT_NEAR(r.recall, 0.5, 0.03);
  EXPECT_EQ(r.counts.tp + r.counts.fn, 4000);
}

TEST(DetectionEval, MapIsMeanOfTaskAps) {
  TaskResult a, b;
  a.task = "a";
  a.ap = 1.0;
  b.task = "b";
  b.ap = 0.5;
  a.counts = {3, 0, 1};
  b.counts = {1, 2, 3};
  const auto r = summarize_tasks({a, b});
  EXPECT_DOUBLE_EQ(r.map, 0.75);
  EXPECT_EQ(r.counts.tp, 4);
  EXPECT_EQ(r.counts.fn, 4);
  EXPECT_DOUBLE_EQ(r.recall, 0.5);
}

TEST(DetectionEval, MissingImageWithoutSizeIsMissingFile) {
  std::vector<datasets::SardImage> images{{"x.png", std::nullopt, std::nullopt, {}}};
  try {
    run_detection_eval(datasets::default_sard_tasks(), images, "/nonexistent", {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kMissingFile);
  }
}

TEST(DetectionEval, TimingsAveraged) {
  const auto images = datasets::synth_sard(10, 3, 56);
  const auto r = run_detection_eval({datasets::default_sard_tasks()[1]}, images, "/nonexistent", {});
  backend::BackendConfig c;
  // Modeled: every image runs three verifications.
  EXPECT_NEAR(r.mean_t_f, c.latency.stage1_s + 3 * c.latency.stage2_s, 1e-12);
  EXPECT_NEAR(*r.mean_t_obj, c.latency.stage2_s, 1e-12);
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

TEST(Sweep, ThresholdGrid) {
  const auto t = sweep_thresholds();
  ASSERT_EQ(t.size(), kSweepSteps);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(t[i], (30.0 + 5.0 * static_cast<double>(i)) / 100.0);
  EXPECT_EQ(t.front(), 0.3);
  EXPECT_EQ(t.back(), 0.95);
}

TEST(Sweep, StaticTrackerNotApplicable) {
  const std::vector<datasets::Sequence> seqs{datasets::synth_memory_sequence(datasets::static_fixture())};
  orchestrator::MissionConfig c;
  c.tracker = TrackerKind::kStatic;
  c.policy.enabled = false;
  try {
    run_sweep(seqs, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kSweepNotApplicable);
  }
  EXPECT_THROW(run_sweep({}, mosse_config()), Error);
}

TEST(Sweep, NeverDropsFixtureGivesIdenticalRows) {
  const auto spec = datasets::translation_fixture();
  const std::vector<datasets::Sequence> seqs{datasets::synth_memory_sequence(spec)};
  // The fixture keeps confidence at or above the top threshold throughout.
  const auto log = testing::checked(orchestrator::run_mission(seqs[0], mosse_config(0.95)));
  for (const auto& f : log.frames) {
    if (f.confidence) {
      ASSERT_GE(*f.confidence, 0.95) << f.frame;
    }
  }
  const auto r = run_sweep(seqs, mosse_config(), 2);
  ASSERT_EQ(r.rows.size(), 14u);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    EXPECT_EQ(r.rows[i].t_c, sweep_thresholds()[i]);
    EXPECT_EQ(r.rows[i].miou, r.rows[0].miou);
    EXPECT_EQ(r.rows[i].backend_calls, r.rows[0].backend_calls);
    EXPECT_GE(r.rows[i].fps_edge, r.rows[i].fps);
  }
  // Equal rows: lowest threshold wins the tie.
  EXPECT_EQ(r.selected, 0u);
}

TEST(Sweep, OcclusionFixtureIsThresholdSensitive) {
  const std::vector<datasets::Sequence> seqs{datasets::synth_memory_sequence(datasets::occlusion_fixture())};
  const auto r = run_sweep(seqs, mosse_config(), 0);
  ASSERT_EQ(r.rows.size(), 14u);
  std::set<double> distinct;
  for (const auto& row : r.rows) {
    distinct.insert(row.miou);
    EXPECT_GE(row.fps_edge, row.fps);
  }
  EXPECT_GE(distinct.size(), 2u);
  std::size_t best = 0;
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    if (r.rows[i].miou > r.rows[best].miou) best = i;
  }
  EXPECT_EQ(r.rows[r.selected].miou, r.rows[best].miou);
}

TEST(Sweep, ReproducibleAcrossRunsAndWorkerCounts) {
  const std::vector<datasets::Sequence> seqs{datasets::synth_memory_sequence(datasets::occlusion_fixture(3)),
                                             datasets::synth_memory_sequence(datasets::translation_fixture(4))};
  auto c = mosse_config();
  c.backend.noise = {0.1, 0.3, 1.0, 0.05, 8};
  const auto a = run_sweep(seqs, c, 1);
  const auto b = run_sweep(seqs, c, 3);
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_EQ(a.selected, b.selected);
  EXPECT_EQ(sweep_csv(a), sweep_csv(b));
}

TEST(Sweep, SelectionTieBreaks) {
  std::vector<SweepRow> rows(3);
  rows[0] = {0.3, 0.8, 10, 20, {}, 1};
  rows[1] = {0.35, 0.9, 9, 20, {}, 1};
  rows[2] = {0.4, 0.9, 12, 20, {}, 1};
  EXPECT_EQ(select_threshold(rows), 2u);
  rows[2].fps = 9;
  EXPECT_EQ(select_threshold(rows), 1u);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

std::vector<std::string> csv_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Report, StableColumns) {
  const auto det = summarize_tasks({TaskResult{"person", 1.0, {1, 0, 0}, 1.0, 0.03, 0.01, 1, 1}});
  EXPECT_EQ(csv_lines(detection_csv(det))[0], "task,ap,map,t_f_ms,t_obj_ms,tp,fp,fn,recall");
  EXPECT_EQ(csv_lines(detection_csv(det))[1].substr(0, 13), "person,1,1,30");
  const auto j = nlohmann::json::parse(detection_json(det));
  EXPECT_EQ(j["map"], 1.0);

  TrackingEvalResult tr;
  tr.miou = 0.5;
  EXPECT_EQ(csv_lines(tracking_csv("s", {0.7, true}, tr))[0],
            "sequence,t_c,miou,fps,fps_edge,t_b_ms,backend_calls,absent_gt_with_box");
  EXPECT_TRUE(nlohmann::json::parse(tracking_json("s", {0.7, true}, tr))["t_b_ms"].is_null());

  SweepResult sw;
  sw.rows = {SweepRow{0.3, 0.5, 10, 20, 0.25, 2}};
  const auto lines = csv_lines(sweep_csv(sw));
  EXPECT_EQ(lines[0], "t_c,miou,fps,fps_edge,t_b_ms,backend_calls,selected");
  EXPECT_EQ(lines[1], "0.3,0.5,10,20,250,2,1");
  EXPECT_EQ(nlohmann::json::parse(sweep_json(sw))["rows"].size(), 1u);
}

}  // namespace
}  // namespace skytrack::eval
