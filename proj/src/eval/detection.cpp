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

#include "skytrack/eval/detection.hpp"

#include <algorithm>
#include <numeric>

#include "skytrack/core/error.hpp"
#include "skytrack/core/timing.hpp"

namespace skytrack::eval {
namespace {

struct Ranked {
  double score;
  std::size_t image;
  std::size_t index;
};

// True-positive flag per prediction in rank order, plus the number of truths.
std::pair<std::vector<bool>, std::size_t> rank_and_match(std::span<const DetectionSample> samples,
                                                         double iou_threshold) {
  std::vector<Ranked> ranked;
  std::size_t total_truths = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    total_truths += samples[i].truths.size();
    for (std::size_t k = 0; k < samples[i].predictions.size(); ++k) {
      ranked.push_back({samples[i].predictions[k].detector_score, i, k});
    }
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Ranked& a, const Ranked& b) { return a.score > b.score; });

  std::vector<std::vector<bool>> taken(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) taken[i].assign(samples[i].truths.size(), false);

  std::vector<bool> tp;
  tp.reserve(ranked.size());
  for (const auto& r : ranked) {
    const auto& box = samples[r.image].predictions[r.index].box;
    const auto& truths = samples[r.image].truths;
    std::optional<std::size_t> best;
    double best_iou = iou_threshold;
    for (std::size_t t = 0; t < truths.size(); ++t) {
      if (taken[r.image][t]) continue;
      const double v = iou(box, truths[t]);
      if (v >= best_iou && (!best || v > best_iou)) {
        best = t;
        best_iou = v;
      }
    }
    if (best) taken[r.image][*best] = true;
    tp.push_back(best.has_value());
  }
  return {std::move(tp), total_truths};
}

}  // namespace

double average_precision(std::span<const DetectionSample> samples, double iou_threshold) {
  const auto [tp, truths] = rank_and_match(samples, iou_threshold);
  if (truths == 0) return tp.empty() ? 1.0 : 0.0;

  const std::size_t n = tp.size();
  // Extended precision keeps rational cases such as 5/6 correctly rounded.
  std::vector<long double> precision(n);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    hits += tp[i] ? 1 : 0;
    precision[i] = static_cast<long double>(hits) / static_cast<long double>(i + 1);
  }
  for (std::size_t i = n; i-- > 1;) precision[i - 1] = std::max(precision[i - 1], precision[i]);

  // Recall rises by exactly 1/truths at each true positive, so the area is
  // the summed interpolated precision at those ranks over a single division.
  long double area = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    if (tp[i]) area += precision[i];
  }
  return static_cast<double>(area / static_cast<long double>(truths));
}

double average_precision(std::span<const Detection> predictions, std::span<const BBox> truths,
                         double iou_threshold) {
  const DetectionSample sample{{predictions.begin(), predictions.end()}, {truths.begin(), truths.end()}};
  return average_precision(std::span<const DetectionSample>(&sample, 1), iou_threshold);
}

MatchCounts match_counts(std::span<const DetectionSample> samples, double iou_threshold) {
  const auto [tp, truths] = rank_and_match(samples, iou_threshold);
  MatchCounts c;
  c.tp = static_cast<int>(std::count(tp.begin(), tp.end(), true));
  c.fp = static_cast<int>(tp.size()) - c.tp;
  c.fn = static_cast<int>(truths) - c.tp;
  return c;
}

namespace {

double recall_of(const MatchCounts& c) {
  return c.tp + c.fn > 0 ? static_cast<double>(c.tp) / (c.tp + c.fn) : 1.0;
}

Frame load_image(const datasets::SardImage& img, const std::filesystem::path& dir, int index) {
  const auto path = dir / img.image;
  if (std::filesystem::exists(path)) return read_frame_image(path, index, 0.0);
  if (!img.width || !img.height) {
    throw Error(Errc::kMissingFile, "missing image " + path.string());
  }
  Frame f;
  f.index = index;
  f.width = *img.width;
  f.height = *img.height;
  f.pixels.assign(static_cast<std::size_t>(f.width) * f.height, 128);
  return f;
}

}  // namespace

DetectionEvalResult summarize_tasks(std::vector<TaskResult> tasks) {
  DetectionEvalResult out;
  double ap_sum = 0.0;
  double t_f_sum = 0.0;
  double t_obj_sum = 0.0;
  int images = 0;
  int t_obj_frames = 0;
  for (const auto& r : tasks) {
    ap_sum += r.ap;
    out.counts.tp += r.counts.tp;
    out.counts.fp += r.counts.fp;
    out.counts.fn += r.counts.fn;
    t_f_sum += r.mean_t_f * r.images;
    images += r.images;
    if (r.mean_t_obj) {
      t_obj_sum += *r.mean_t_obj * r.stage2_frames;
      t_obj_frames += r.stage2_frames;
    }
  }
  out.map = tasks.empty() ? 0.0 : ap_sum / static_cast<double>(tasks.size());
  out.recall = recall_of(out.counts);
  out.mean_t_f = images > 0 ? t_f_sum / images : 0.0;
  if (t_obj_frames > 0) out.mean_t_obj = t_obj_sum / t_obj_frames;
  out.tasks = std::move(tasks);
  return out;
}

DetectionEvalResult run_detection_eval(const std::vector<datasets::TaskSpec>& tasks,
                                       const std::vector<datasets::SardImage>& images,
                                       const std::filesystem::path& image_dir,
                                       const backend::BackendConfig& config) {
  std::vector<Frame> frames;
  frames.reserve(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    frames.push_back(load_image(images[i], image_dir, static_cast<int>(i)));
  }

  std::vector<TaskResult> results;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto& task = tasks[t];
    backend::BackendConfig task_config = config;
    task_config.noise.seed = mix_seed(config.noise.seed, t);

    TaskResult result;
    result.task = task.id;
    result.images = static_cast<int>(images.size());
    std::vector<DetectionSample> samples;
    samples.reserve(images.size());
    double t_f = 0.0;
    double t_obj = 0.0;
    for (std::size_t i = 0; i < images.size(); ++i) {
      const auto det = backend::detect(frames[i], task.query, images[i].persons, task_config);
      DetectionSample s;
      for (const auto& d : det.detections) {
        if (d.verified) s.predictions.push_back(d);
      }
      for (const auto& p : images[i].persons) {
        if (task.is_positive(p)) s.truths.push_back(p.box);
      }
      samples.push_back(std::move(s));
      t_f += det.timings.t_f;
      if (det.timings.t_obj) {
        t_obj += *det.timings.t_obj;
        ++result.stage2_frames;
      }
    }
    result.ap = average_precision(samples);
    result.counts = match_counts(samples);
    result.recall = recall_of(result.counts);
    result.mean_t_f = images.empty() ? 0.0 : t_f / static_cast<double>(images.size());
    if (result.stage2_frames > 0) result.mean_t_obj = t_obj / result.stage2_frames;
    results.push_back(std::move(result));
  }
  return summarize_tasks(std::move(results));
}

}  // namespace skytrack::eval
