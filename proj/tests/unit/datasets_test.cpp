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

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <regex>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "skytrack/core/error.hpp"
#include "skytrack/datasets/sard.hpp"
#include "skytrack/datasets/sequence.hpp"
#include "skytrack/datasets/synth.hpp"
#include "skytrack/datasets/tasks.hpp"

namespace skytrack::datasets {
namespace {

namespace fs = std::filesystem;
using testing::Gen;

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("skytrack_ds_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Writes a small sequence directory by hand, independent of the synthesizer.
void make_sequence_dir(const fs::path& dir, int frames, const std::string& gt, const std::string& query) {
  fs::create_directories(dir / "frames");
  std::vector<std::uint8_t> px(16 * 12, 90);
  for (int i = 0; i < frames; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "%08d.png", i + 1);
    write_gray_png(dir / "frames" / name, 16, 12, px);
  }
  write_text(dir / "groundtruth.txt", gt);
  write_text(dir / "query.txt", query);
}

template <typename Fn>
std::string expect_errc(Errc code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << errc_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
    return e.what();
  }
  return {};
}

const std::string kQuery = "person\nshirt_color=red\nthe person in the red shirt\n";

// ---------------------------------------------------------------------------
// load_sequence
// ---------------------------------------------------------------------------

TEST(LoadSequence, ThreeFramesAllBoxes) {
  TempDir tmp;
  make_sequence_dir(tmp.path(), 3, "1,2,3,4\n2,2,3,4\n3,2,3,4\n", kQuery);
  const auto seq = load_sequence(tmp.path());
  EXPECT_EQ(seq.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    ASSERT_TRUE(seq.ground_truth()[i]);
    EXPECT_EQ(*seq.ground_truth()[i], (BBox{static_cast<double>(i + 1), 2, 3, 4}));
  }
  EXPECT_EQ(seq.query().superset_class, "person");
  EXPECT_EQ(seq.query().predicate.shirt_color, "red");
  EXPECT_EQ(seq.query().description, "the person in the red shirt");
  EXPECT_DOUBLE_EQ(seq.fps(), kDefaultFps);
  const auto f = seq.frame(2);
  EXPECT_EQ(f->index, 2);
  EXPECT_EQ(f->width, 16);
  EXPECT_DOUBLE_EQ(f->timestamp, 0.2);
  EXPECT_EQ(seq.frame(2).get(), f.get());  // cached
}

TEST(LoadSequence, AbsentLine) {
  TempDir tmp;
  make_sequence_dir(tmp.path(), 3, "1,2,3,4\nabsent\n3,2,3,4\n", kQuery);
  const auto seq = load_sequence(tmp.path());
  EXPECT_TRUE(seq.ground_truth()[0]);
  EXPECT_FALSE(seq.ground_truth()[1]);
}

TEST(LoadSequence, TooFewLines) {
  TempDir tmp;
  make_sequence_dir(tmp.path(), 3, "1,2,3,4\n2,2,3,4\n", kQuery);
  const auto msg = expect_errc(Errc::kLineCountMismatch, [&] { load_sequence(tmp.path()); });
  EXPECT_NE(msg.find("2 lines for 3 frames"), std::string::npos) << msg;
}

TEST(LoadSequence, MalformedBoxNamesLine) {
  TempDir tmp;
  make_sequence_dir(tmp.path(), 3, "1,2,3,4\n2,2,x,4\n3,2,3,4\n", kQuery);
  const auto msg = expect_errc(Errc::kMalformedBox, [&] { load_sequence(tmp.path()); });
  EXPECT_NE(msg.find("groundtruth.txt:2"), std::string::npos) << msg;
}

TEST(LoadSequence, MissingPieces) {
  TempDir tmp;
  expect_errc(Errc::kMissingFile, [&] { load_sequence(tmp.path() / "nope"); });
  make_sequence_dir(tmp.path(), 2, "1,2,3,4\n1,2,3,4\n", kQuery);
  fs::remove(tmp.path() / "query.txt");
  expect_errc(Errc::kMissingFile, [&] { load_sequence(tmp.path()); });
  write_text(tmp.path() / "query.txt", kQuery);
  fs::remove(tmp.path() / "groundtruth.txt");
  expect_errc(Errc::kMissingFile, [&] { load_sequence(tmp.path()); });
}

TEST(LoadSequence, NoTargetAnywhere) {
  TempDir tmp;
  make_sequence_dir(tmp.path(), 2, "absent\nabsent\n", kQuery);
  expect_errc(Errc::kNoTarget, [&] { load_sequence(tmp.path()); });
}

TEST(LoadSequence, NonNumericFrameName) {
  TempDir tmp;
  make_sequence_dir(tmp.path(), 2, "1,2,3,4\n1,2,3,4\n", kQuery);
  std::vector<std::uint8_t> px(4, 0);
  write_gray_png(tmp.path() / "frames" / "cover.png", 2, 2, px);
  expect_errc(Errc::kSchemaViolation, [&] { load_sequence(tmp.path()); });
}

TEST(LoadSequence, HeaderSetsFps) {
  TempDir tmp;
  make_sequence_dir(tmp.path(), 2, "1,2,3,4\n1,2,3,4\n", "# skytrack-query format_version=1 fps=25\n" + kQuery);
  EXPECT_DOUBLE_EQ(load_sequence(tmp.path()).fps(), 25.0);
}

TEST(LoadSequence, ConcurrentFrameAccessSharesCache) {
  const auto seq = synth_memory_sequence(translation_fixture());
  std::vector<std::thread> threads;
  std::vector<const Frame*> seen(8);
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t k = 0; k < seq.size(); ++k) seq.frame(k);
      seen[static_cast<std::size_t>(t)] = seq.frame(7).get();
    });
  }
  for (auto& th : threads) th.join();
  for (const auto* p : seen) EXPECT_EQ(p, seen[0]);
}

// ---------------------------------------------------------------------------
// Ground truth and query text
// ---------------------------------------------------------------------------

TEST(GroundTruthText, TrailingBlankLinesTolerated) {
  const auto gt = parse_ground_truth("1,2,3,4\r\nabsent\n\n\n", "gt");
  EXPECT_EQ(gt.size(), 2u);
  expect_errc(Errc::kMalformedBox, [] { parse_ground_truth("1,2,3,4\n\nabsent\n", "gt"); });
}

TEST(GroundTruthText, RejectsNonPositiveSizes) {
  for (const char* bad : {"1,2,0,4", "1,2,3,-4", "1,2,3", "1,2,3,4,5", "nan,1,2,3", "1,2,inf,3", "+-1,2,3,4"}) {
    expect_errc(Errc::kMalformedBox, [&] { parse_ground_truth(bad, "gt"); });
  }
}

TEST(GroundTruthText, WriterRoundTripsExactly) {
  Gen g(41);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::optional<BBox>> gt;
    for (int i = 0; i < 30; ++i) {
      if (g.coin(0.2)) gt.emplace_back();
      else gt.emplace_back(g.box(1000, 0.001, 500));
    }
    TempDir tmp;
    write_ground_truth(tmp.path() / "gt.txt", gt);
    EXPECT_EQ(parse_ground_truth(read_text(tmp.path() / "gt.txt"), "gt"), gt);
  }
}

// Reference grammar for one ground-truth file, written from the format
// description: LF lines, optional CR, blank/tab trimming, trailing blank
// lines only, "absent" or four finite decimals with positive w and h.
std::optional<std::vector<std::optional<BBox>>> reference_gt(const std::string& text) {
  static const std::regex number(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    std::string line = text.substr(start, nl == std::string::npos ? std::string::npos : nl - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  auto strip = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
  };
  std::vector<std::optional<BBox>> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string line = strip(lines[i]);
    if (line.empty()) {
      for (std::size_t k = i; k < lines.size(); ++k) {
        if (!strip(lines[k]).empty()) return std::nullopt;
      }
      break;
    }
    if (line == "absent") {
      out.emplace_back();
      continue;
    }
    std::vector<double> v;
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      const std::string tok = strip(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (!std::regex_match(tok, number)) return std::nullopt;
      errno = 0;
      const double d = std::strtod(tok.c_str(), nullptr);
      if (errno == ERANGE || !std::isfinite(d)) return std::nullopt;
      v.push_back(d);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (v.size() != 4 || !(v[2] > 0) || !(v[3] > 0)) return std::nullopt;
    out.emplace_back(BBox{v[0], v[1], v[2], v[3]});
  }
  return out;
}

std::string mutate(Gen& g, std::string s) {
  static const std::string alphabet = "0123456789.,-+eE \tabsent\r\n";
  const int edits = g.integer(1, 3);
  for (int e = 0; e < edits; ++e) {
    const std::size_t pos = s.empty() ? 0 : static_cast<std::size_t>(g.integer(0, static_cast<int>(s.size()) - 1));
    const char c = alphabet[static_cast<std::size_t>(g.integer(0, static_cast<int>(alphabet.size()) - 1))];
    switch (g.integer(0, 3)) {
      case 0:
        if (!s.empty()) s.erase(pos, 1);
        break;
      case 1:
        s.insert(pos, 1, c);
        break;
      case 2:
        if (!s.empty()) s[pos] = c;
        break;
      default: {
        // Duplicate or drop a whole line.
        const auto nl = s.find('\n', pos);
        const auto begin = s.rfind('\n', pos == 0 ? 0 : pos - 1);
        const std::size_t b = begin == std::string::npos ? 0 : begin + 1;
        const std::string line = s.substr(b, nl == std::string::npos ? std::string::npos : nl - b + 1);
        if (g.coin()) s.insert(b, line);
        else s.erase(b, line.size());
      }
    }
  }
  return s;
}

TEST(GroundTruthText, MutationFuzzNeverMisparses) {
  Gen g(42);
  const std::string base = "10,20,30,40\nabsent\n1.5,2.25,8,9\n-3,0,1e1,2E0\n";
  int accepted = 0, rejected = 0;
  for (int i = 0; i < 20000; ++i) {
    const std::string text = mutate(g, base);
    const auto expected = reference_gt(text);
    try {
      const auto got = parse_ground_truth(text, "groundtruth.txt");
      ASSERT_TRUE(expected) << "accepted invalid text:\n" << text;
      ASSERT_EQ(got, *expected) << text;
      ++accepted;
    } catch (const Error& e) {
      ASSERT_FALSE(expected) << "rejected valid text:\n" << text << "\n" << e.what();
      ASSERT_EQ(e.code(), Errc::kMalformedBox);
      ASSERT_TRUE(std::regex_search(std::string(e.what()), std::regex(R"(groundtruth\.txt:\d+: )")))
          << e.what();
      ++rejected;
    }
  }
  EXPECT_GT(accepted, 1000);
  EXPECT_GT(rejected, 1000);
}

TEST(QueryText, HeaderAndDescription) {
  const auto q = parse_query("# skytrack-query format_version=1 fps=12.5\nperson\npose=seated, injured=true\nline one\nline two\n",
                             "query.txt");
  EXPECT_DOUBLE_EQ(q.fps, 12.5);
  EXPECT_EQ(q.query.predicate.pose, Pose::kSeated);
  EXPECT_EQ(q.query.predicate.injured, true);
  EXPECT_EQ(q.query.description, "line one\nline two");
}

TEST(QueryText, Errors) {
  expect_errc(Errc::kSchemaViolation, [] { parse_query("person\n", "query.txt"); });
  expect_errc(Errc::kSchemaViolation, [] { parse_query("# format_version=2\nperson\nnone\n", "query.txt"); });
  expect_errc(Errc::kSchemaViolation, [] { parse_query("# fps=0\nperson\nnone\n", "query.txt"); });
  const auto msg = expect_errc(Errc::kSchemaViolation, [] { parse_query("person\npose=flying\n", "query.txt"); });
  EXPECT_NE(msg.find("query.txt:2"), std::string::npos) << msg;
}

TEST(QueryText, WriterRoundTrip) {
  Gen g(43);
  for (int i = 0; i < 300; ++i) {
    SemanticQuery q;
    q.superset_class = g.coin() ? "person" : "vehicle";
    q.predicate = g.predicate();
    q.description = g.coin() ? "" : "find the " + g.color() + " one\nsecond line";
    const double fps = g.pick(std::vector<double>{10, 25, 29.97, 0.5});
    TempDir tmp;
    write_query(tmp.path() / "q.txt", q, fps);
    const auto back = parse_query(read_text(tmp.path() / "q.txt"), "q.txt");
    EXPECT_EQ(back.query, q);
    EXPECT_EQ(back.fps, fps);
    EXPECT_EQ(back.format_version, kFormatVersion);
  }
}

TEST(QueryText, MutationFuzzIsStableOrLocated) {
  Gen g(44);
  const std::string base = "# skytrack-query format_version=1 fps=10\nperson\npose=standing,shirt_color=blue\ndesc\n";
  for (int i = 0; i < 5000; ++i) {
    std::string text = base;
    const int edits = g.integer(1, 3);
    for (int e = 0; e < edits; ++e) {
      const auto pos = static_cast<std::size_t>(g.integer(0, static_cast<int>(text.size()) - 1));
      const char c = "=,#\n abcdeptruy01"[g.integer(0, 14)];
      if (g.coin()) text.erase(pos, 1);
      else text.insert(pos, 1, c);
    }
    try {
      const auto q = parse_query(text, "query.txt");
      // Whatever was accepted must survive the writer unchanged.
      TempDir tmp;
      write_query(tmp.path() / "q.txt", q.query, q.fps);
      const auto again = parse_query(read_text(tmp.path() / "q.txt"), "q.txt");
      ASSERT_EQ(again.query.predicate, q.query.predicate) << text;
      ASSERT_EQ(again.query.superset_class, q.query.superset_class) << text;
      ASSERT_FALSE(q.query.superset_class.empty());
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), Errc::kSchemaViolation) << text;
      ASSERT_NE(std::string(e.what()).find("query.txt"), std::string::npos) << e.what();
    }
  }
}

// ---------------------------------------------------------------------------
// SARD annotations
// ---------------------------------------------------------------------------

TEST(Sard, LayingInjuredParses) {
  const auto a = parse_sard_annotations(
      R"([{"image":"a.png","persons":[{"box":[1,2,3,4],"pose":"laying_down","shirt_color":"gray","injured":true}]}])");
  ASSERT_EQ(a.images.size(), 1u);
  ASSERT_EQ(a.images[0].persons.size(), 1u);
  EXPECT_TRUE(a.images[0].persons[0].effectively_injured());
  EXPECT_TRUE(a.warnings.empty());
}

TEST(Sard, UnknownPoseNamesPath) {
  const auto msg = expect_errc(Errc::kSchemaViolation, [] {
    parse_sard_annotations(
        R"([{"image":"a.png","persons":[{"box":[1,2,3,4],"pose":"standing","shirt_color":"gray","injured":false},{"box":[1,2,3,4],"pose":"flying","shirt_color":"gray","injured":false}]}])");
  });
  EXPECT_NE(msg.find("$[0].persons[1].pose"), std::string::npos) << msg;
}

TEST(Sard, StandingInjuredStrictVersusLenient) {
  const std::string text =
      R"({"format_version":1,"images":[{"image":"a.png","persons":[{"box":[1,2,3,4],"pose":"standing","shirt_color":"gray","injured":true}]}]})";
  const auto msg = expect_errc(Errc::kSchemaViolation, [&] { parse_sard_annotations(text); });
  EXPECT_NE(msg.find("$.images[0].persons[0].injured"), std::string::npos) << msg;
  const auto lenient = parse_sard_annotations(text, Strictness::kLenient);
  ASSERT_EQ(lenient.warnings.size(), 1u);
  EXPECT_TRUE(lenient.images[0].persons[0].injured);
  EXPECT_FALSE(lenient.images[0].persons[0].effectively_injured());
}

TEST(Sard, NullPoseAccepted) {
  const auto a = parse_sard_annotations(
      R"([{"image":"a.png","persons":[{"box":[1,2,3,4],"pose":null,"shirt_color":"off-white","injured":true}]}])");
  EXPECT_EQ(a.images[0].persons[0].pose, Pose::kNull);
}

TEST(Sard, FileRoundTrip) {
  TempDir tmp;
  const auto images = synth_sard(12, 5, 45);
  write_sard_annotations(tmp.path() / "a.json", images);
  EXPECT_EQ(load_sard_annotations(tmp.path() / "a.json").images, images);
  expect_errc(Errc::kMissingFile, [&] { load_sard_annotations(tmp.path() / "none.json"); });
}

// Each structured mutation has a known outcome: the exact offending path.
TEST(Sard, StructuredMutationsReportPaths) {
  Gen g(46);
  for (int trial = 0; trial < 400; ++trial) {
    const auto images = synth_sard(3, 3, g.u64(), 200, 150);
    auto j = nlohmann::json::parse(format_sard_annotations(images));
    const int i = g.integer(0, 2), p = g.integer(0, 2);
    auto& person = j["images"][i]["persons"][p];
    const std::string base = "$.images[" + std::to_string(i) + "].persons[" + std::to_string(p) + "]";
    std::string expected;
    switch (g.integer(0, 7)) {
      case 0: person["pose"] = "flying"; expected = base + ".pose"; break;
      case 1: person.erase("shirt_color"); expected = base + ".shirt_color"; break;
      case 2: person["injured"] = "yes"; expected = base + ".injured"; break;
      case 3: person["box"][2] = 0; expected = base + ".box"; break;
      case 4: person["box"][1] = "7"; expected = base + ".box[1]"; break;
      case 5: person["box"] = {1, 2, 3}; expected = base + ".box"; break;
      case 6: person["box"][0] = 195; expected = base + ".box"; break;  // past the 200 px width
      default: j["images"][i].erase("image"); expected = "$.images[" + std::to_string(i) + "].image"; break;
    }
    const auto msg = expect_errc(Errc::kSchemaViolation, [&] { parse_sard_annotations(j.dump()); });
    EXPECT_EQ(msg.find(errc_name(Errc::kSchemaViolation)) != std::string::npos, true);
    EXPECT_NE(msg.find(expected + ":"), std::string::npos) << msg << " vs " << expected;
  }
}

TEST(Sard, RootShapeErrors) {
  expect_errc(Errc::kSchemaViolation, [] { parse_sard_annotations("{"); });
  expect_errc(Errc::kSchemaViolation, [] { parse_sard_annotations(R"({"images":[]})"); });
  expect_errc(Errc::kSchemaViolation, [] { parse_sard_annotations(R"({"format_version":2,"images":[]})"); });
  expect_errc(Errc::kSchemaViolation, [] { parse_sard_annotations("42"); });
  EXPECT_TRUE(parse_sard_annotations("[]").images.empty());
}

TEST(Sard, SynthesizedImagesObeySchema) {
  const auto images = synth_sard(30, 8, 47);
  ASSERT_EQ(images.size(), 30u);
  for (std::size_t i = 0; i < images.size(); ++i) {
    EXPECT_EQ(images[i].image, std::to_string(i) + ".png");
    ASSERT_TRUE(images[i].width);
    for (const auto& p : images[i].persons) {
      EXPECT_TRUE(p.box.valid());
      EXPECT_LE(p.box.right(), *images[i].width);
      EXPECT_LE(p.box.bottom(), *images[i].height);
      if (p.injured) {
        EXPECT_TRUE(is_injury_candidate(p.pose));
      }
    }
    for (std::size_t a = 0; a < images[i].persons.size(); ++a) {
      for (std::size_t b = a + 1; b < images[i].persons.size(); ++b) {
        EXPECT_EQ(iou(images[i].persons[a].box, images[i].persons[b].box), 0.0);
      }
    }
  }
  EXPECT_EQ(synth_sard(30, 8, 47), images);
}

// ---------------------------------------------------------------------------
// Synthetic sequences
// ---------------------------------------------------------------------------

TEST(Synth, TranslationRoundTripsThroughDisk) {
  TempDir tmp;
  const auto spec = translation_fixture();
  const auto seq = synth_sequence(spec, tmp.path() / "seq");
  ASSERT_EQ(seq.size(), 60u);
  for (int k = 0; k < 60; ++k) {
    ASSERT_TRUE(seq.ground_truth()[static_cast<std::size_t>(k)]);
    EXPECT_EQ(*seq.ground_truth()[static_cast<std::size_t>(k)], (BBox{40.0 + 2.0 * k, 100, 40, 40}));
  }
  EXPECT_EQ(seq.query(), spec.query);
  const auto frames = render_frames(spec);
  for (std::size_t k = 0; k < 60; k += 13) EXPECT_EQ(seq.frame(k)->pixels, frames[k].pixels);
}

TEST(Synth, OcclusionWindowIsAbsentExactly) {
  const auto gt = synth_ground_truth(occlusion_fixture());
  for (int k = 0; k < 60; ++k) EXPECT_EQ(gt[static_cast<std::size_t>(k)].has_value(), k < 30 || k > 39) << k;
}

TEST(Synth, SameSeedGivesIdenticalFiles) {
  TempDir a, b;
  synth_sequence(occlusion_fixture(5), a.path());
  synth_sequence(occlusion_fixture(5), b.path());
  int compared = 0;
  for (const auto& e : fs::recursive_directory_iterator(a.path())) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), a.path());
    EXPECT_EQ(read_text(e.path()), read_text(b.path() / rel)) << rel;
    ++compared;
  }
  EXPECT_EQ(compared, 62);
  const auto other = render_frames(occlusion_fixture(6));
  EXPECT_NE(other[0].pixels, render_frames(occlusion_fixture(5))[0].pixels);
}

TEST(Synth, OutOfBoundsSpecRejected) {
  auto spec = translation_fixture();
  spec.velocity_x = 10;
  expect_errc(Errc::kSpecOutOfBounds, [&] { spec.validate(); });
  spec = translation_fixture();
  spec.occlusions = {{0, 59}};
  expect_errc(Errc::kSpecOutOfBounds, [&] { synth_memory_sequence(spec); });
}

TEST(Synth, OccludedFramesHideTheTarget) {
  const auto spec = occlusion_fixture();
  auto clean = spec;
  clean.occlusions.clear();
  const auto with = render_frames(spec), without = render_frames(clean);
  const BBox b = spec.box_at(35);
  // Inside the target box the occluded frame differs from the unoccluded one.
  int differing = 0;
  for (int y = static_cast<int>(b.y); y < static_cast<int>(b.bottom()); ++y) {
    for (int x = static_cast<int>(b.x); x < static_cast<int>(b.right()); ++x) {
      differing += with[35].at(x, y) != without[35].at(x, y);
    }
  }
  EXPECT_GT(differing, 100);
  EXPECT_EQ(with[20].pixels, without[20].pixels);
}

TEST(SynthProperty, LoaderIsInverseOnAnnotations) {
  Gen g(48);
  for (int trial = 0; trial < 5; ++trial) {
    SynthSpec spec;
    spec.name = "rand";
    spec.width = 160;
    spec.height = 120;
    spec.frames = g.integer(3, 12);
    spec.start = {g.real(20, 40), g.real(20, 40), g.real(10, 30), g.real(10, 30)};
    spec.velocity_x = g.real(-1.5, 1.5);
    spec.velocity_y = g.real(-1.5, 1.5);
    spec.occlusions = {{1, 1}};
    spec.seed = g.u64();
    spec.query.predicate = g.predicate();
    spec.query.description = "d";
    TempDir tmp;
    const auto seq = synth_sequence(spec, tmp.path());
    EXPECT_EQ(seq.ground_truth(), synth_ground_truth(spec));
    EXPECT_EQ(seq.query(), spec.query);
    EXPECT_DOUBLE_EQ(seq.fps(), spec.fps);
  }
}

// ---------------------------------------------------------------------------
// Tasks and referring expressions
// ---------------------------------------------------------------------------

TEST(Tasks, EightObjectives) {
  const auto tasks = default_sard_tasks();
  ASSERT_EQ(tasks.size(), 8u);
  EXPECT_TRUE(tasks[0].truth_predicate.is_any());
  EXPECT_EQ(tasks[3].truth_predicate.shirt_color, "blue");
  EXPECT_EQ(tasks[6].truth_predicate.pose, Pose::kSeated);
  EXPECT_EQ(tasks[7].truth_predicate.injured, true);
  for (const auto& t : tasks) {
    EXPECT_EQ(t.query.superset_class, "person");
    EXPECT_EQ(t.query.predicate, t.truth_predicate);
    EXPECT_TRUE(t.query.description.starts_with("Find any person"));
    // The keyword parser recovers each task's predicate from its sentence.
    EXPECT_EQ(parse_referring_expression(t.query.description).predicate, t.truth_predicate) << t.id;
  }
}

TEST(Tasks, InjuredPositivesFollowPoseRule) {
  const auto injured = default_sard_tasks()[7];
  EXPECT_TRUE(injured.is_positive({{}, Pose::kSeated, "gray", true}));
  EXPECT_FALSE(injured.is_positive({{}, Pose::kRunning, "gray", true}));
  EXPECT_FALSE(injured.is_positive({{}, Pose::kLayingDown, "gray", false}));
}

TEST(ReferringExpression, Keywords) {
  const auto q = parse_referring_expression("The hurt man in the GREY jacket, lying down");
  EXPECT_EQ(q.predicate.shirt_color, "gray");
  EXPECT_EQ(q.predicate.pose, Pose::kLayingDown);
  EXPECT_EQ(q.predicate.injured, true);
  EXPECT_EQ(q.description, "The hurt man in the GREY jacket, lying down");
  EXPECT_TRUE(parse_referring_expression("someone over there").predicate.is_any());
  EXPECT_EQ(parse_referring_expression("a walking person who needs help").predicate.pose, Pose::kWalking);
}

}  // namespace
}  // namespace skytrack::datasets
