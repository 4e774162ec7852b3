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

#include "skytrack/trackers/mosse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <opencv2/imgproc.hpp>
#include <random>

#include "window.hpp"

namespace skytrack::trackers {
namespace {

struct WindowGeometry {
  int w;
  int h;
};

WindowGeometry window_for(const BBox& box) {
  return {std::max(2, static_cast<int>(std::lround(box.w * kSearchScale))),
          std::max(2, static_cast<int>(std::lround(box.h * kSearchScale)))};
}

cv::Mat raw_window(const Frame& frame, const BBox& box, WindowGeometry g) {
  return detail::extract_window<double>(
      frame, detail::window_origin(box.center_x(), g.w),
      detail::window_origin(box.center_y(), g.h), g.w, g.h, CV_64F);
}

// log, zero mean / unit variance, cosine window.
cv::Mat preprocess(const cv::Mat& raw, const cv::Mat& hann) {
  cv::Mat img;
  cv::log(raw + 1.0, img);
  cv::Scalar mean, stddev;
  cv::meanStdDev(img, mean, stddev);
  img = (img - mean[0]) / (stddev[0] + 1e-5);
  return img.mul(hann);
}

cv::Mat spectrum(const cv::Mat& img) {
  cv::Mat out;
  cv::dft(img, out, cv::DFT_COMPLEX_OUTPUT);
  return out;
}

cv::Mat gaussian_response(int w, int h, double sigma) {
  cv::Mat g(h, w, CV_64F);
  const int cx = w / 2;
  const int cy = h / 2;
  for (int r = 0; r < h; ++r) {
    auto* row = g.ptr<double>(r);
    for (int c = 0; c < w; ++c) {
      const double d2 = (c - cx) * (c - cx) + (r - cy) * (r - cy);
      row[c] = std::exp(-d2 / (2.0 * sigma * sigma));
    }
  }
  return g;
}

// Small random rotation and scale about the window center.
cv::Mat perturb(const cv::Mat& raw, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-0.1, 0.1);
  std::uniform_real_distribution<double> scale(0.95, 1.05);
  const cv::Point2f center(static_cast<float>(raw.cols / 2), static_cast<float>(raw.rows / 2));
  const cv::Mat warp =
      cv::getRotationMatrix2D(center, angle(rng) * 180.0 / std::numbers::pi, scale(rng));
  cv::Mat out;
  cv::warpAffine(raw, out, warp, raw.size(), cv::INTER_LINEAR, cv::BORDER_REFLECT);
  return out;
}

void accumulate(const cv::Mat& target, const cv::Mat& f, cv::Mat& numer, cv::Mat& denom) {
  cv::Mat gf, ff;
  cv::mulSpectrums(target, f, gf, 0, true);
  cv::mulSpectrums(f, f, ff, 0, true);
  if (numer.empty()) {
    numer = gf;
    denom = ff;
  } else {
    numer += gf;
    denom += ff;
  }
}

cv::Mat filter_conj(const MosseModel& model, double lambda) {
  cv::Mat h(model.numer.size(), CV_64FC2);
  for (int r = 0; r < h.rows; ++r) {
    const auto* a = model.numer.ptr<cv::Vec2d>(r);
    const auto* b = model.denom.ptr<cv::Vec2d>(r);
    auto* out = h.ptr<cv::Vec2d>(r);
    for (int c = 0; c < h.cols; ++c) {
      const double d = b[c][0] + lambda;
      out[c] = cv::Vec2d(a[c][0] / d, a[c][1] / d);
    }
  }
  return h;
}

}  // namespace

MosseModel mosse_train(const Frame& frame, const BBox& box, const MosseParams& params) {
  const auto g = window_for(box);
  MosseModel model;
  model.window_w = g.w;
  model.window_h = g.h;
  cv::createHanningWindow(model.hann, cv::Size(g.w, g.h), CV_64F);
  model.target = spectrum(gaussian_response(g.w, g.h, params.gaussian_sigma));

  const cv::Mat raw = raw_window(frame, box, g);
  accumulate(model.target, spectrum(preprocess(raw, model.hann)), model.numer, model.denom);
  std::mt19937_64 rng(params.seed);
  for (int i = 0; i < params.train_perturbations; ++i) {
    accumulate(model.target, spectrum(preprocess(perturb(raw, rng), model.hann)),
               model.numer, model.denom);
  }
  return model;
}

double peak_to_sidelobe_ratio(const cv::Mat& response, cv::Point peak, int exclusion) {
  const double peak_value = response.at<double>(peak);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;
  for (int r = 0; r < response.rows; ++r) {
    const auto* row = response.ptr<double>(r);
    for (int c = 0; c < response.cols; ++c) {
      if (std::abs(r - peak.y) <= exclusion && std::abs(c - peak.x) <= exclusion) continue;
      sum += row[c];
      sum_sq += row[c] * row[c];
      ++n;
    }
  }
  if (n < 2) return 0.0;
  const double mean = sum / static_cast<double>(n);
  const double var = std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
  const double sd = std::sqrt(var);
  if (sd < 1e-12) return 0.0;
  return (peak_value - mean) / sd;
}

StepResult mosse_step(MosseModel& model, const BBox& box, const Frame& frame,
                      const MosseParams& params) {
  const WindowGeometry g{model.window_w, model.window_h};
  const cv::Mat f = spectrum(preprocess(raw_window(frame, box, g), model.hann));

  cv::Mat resp_spec, response;
  cv::mulSpectrums(f, filter_conj(model, params.regularization), resp_spec, 0, false);
  cv::dft(resp_spec, response, cv::DFT_INVERSE | cv::DFT_SCALE | cv::DFT_REAL_OUTPUT);

  cv::Point peak;
  cv::minMaxLoc(response, nullptr, nullptr, nullptr, &peak);
  const int dx = peak.x - g.w / 2;
  const int dy = peak.y - g.h / 2;

  StepResult result;
  result.box = {box.x + dx, box.y + dy, box.w, box.h};
  const double psr = peak_to_sidelobe_ratio(response, peak, params.psr_sidelobe_exclusion);
  result.confidence = std::clamp(psr / params.psr_saturation, 0.0, 1.0);

  // Online update with the appearance at the new location.
  const cv::Mat f_new = spectrum(preprocess(raw_window(frame, result.box, g), model.hann));
  cv::Mat gf, ff;
  cv::mulSpectrums(model.target, f_new, gf, 0, true);
  cv::mulSpectrums(f_new, f_new, ff, 0, true);
  const double eta = params.learning_rate;
  model.numer = eta * gf + (1.0 - eta) * model.numer;
  model.denom = eta * ff + (1.0 - eta) * model.denom;
  return result;
}

}  // namespace skytrack::trackers
