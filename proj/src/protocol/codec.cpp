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

#include "skytrack/protocol/codec.hpp"

#include <sodium.h>

#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>

#include "skytrack/core/error.hpp"

namespace skytrack::protocol {
namespace {

using nlohmann::json;

[[noreturn]] void bad_payload(const std::string& path, const std::string& what) {
  throw Error(Errc::kBadPayload, path + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) bad_payload(path + "." + key, "missing field");
  return *it;
}

std::uint64_t get_u64(const json& obj, const char* key, const std::string& path) {
  const auto& v = field(obj, key, path);
  if (!v.is_number_unsigned()) bad_payload(path + "." + key, "expected unsigned integer");
  return v.get<std::uint64_t>();
}

int get_int(const json& obj, const char* key, const std::string& path) {
  const auto& v = field(obj, key, path);
  if (!v.is_number_integer()) bad_payload(path + "." + key, "expected integer");
  const auto n = v.get<std::int64_t>();
  if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max()) {
    bad_payload(path + "." + key, "integer out of range");
  }
  return static_cast<int>(n);
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) bad_payload(path, "expected number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad_payload(path, "non-finite number");
  return d;
}

double get_number(const json& obj, const char* key, const std::string& path) {
  return as_number(field(obj, key, path), path + "." + key);
}

std::string get_string(const json& obj, const char* key, const std::string& path) {
  const auto& v = field(obj, key, path);
  if (!v.is_string()) bad_payload(path + "." + key, "expected string");
  return v.get<std::string>();
}

bool get_bool(const json& obj, const char* key, const std::string& path) {
  const auto& v = field(obj, key, path);
  if (!v.is_boolean()) bad_payload(path + "." + key, "expected boolean");
  return v.get<bool>();
}

double finite(double v) {
  if (!std::isfinite(v)) throw Error(Errc::kInvalidArgument, "non-finite number in message");
  return v;
}

json box_json(const BBox& b) {
  return json::array({finite(b.x), finite(b.y), finite(b.w), finite(b.h)});
}

BBox box_from(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 4) bad_payload(path, "expected [x, y, w, h]");
  BBox b{as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]"),
         as_number(v[2], path + "[2]"), as_number(v[3], path + "[3]")};
  if (!b.valid()) bad_payload(path, "box must have positive width and height");
  return b;
}

json query_json(const SemanticQuery& q) {
  json predicate = json::object();
  if (q.predicate.pose) predicate["pose"] = pose_name(*q.predicate.pose);
  if (q.predicate.shirt_color) predicate["shirt_color"] = *q.predicate.shirt_color;
  if (q.predicate.injured) predicate["injured"] = *q.predicate.injured;
  return {{"superset_class", q.superset_class},
          {"predicate", predicate},
          {"description", q.description},
          {"system_prompt", q.system_prompt}};
}

SemanticQuery query_from(const json& v, const std::string& path) {
  if (!v.is_object()) bad_payload(path, "expected object");
  SemanticQuery q;
  q.superset_class = get_string(v, "superset_class", path);
  if (q.superset_class.empty()) bad_payload(path + ".superset_class", "must be nonempty");
  q.description = get_string(v, "description", path);
  q.system_prompt = get_string(v, "system_prompt", path);
  const auto& p = field(v, "predicate", path);
  const std::string ppath = path + ".predicate";
  if (!p.is_object()) bad_payload(ppath, "expected object");
  for (const auto& [key, value] : p.items()) {
    if (key == "pose") {
      if (!value.is_string()) bad_payload(ppath + ".pose", "expected string");
      const auto pose = parse_pose(value.get<std::string>());
      if (!pose) bad_payload(ppath + ".pose", "unknown pose");
      q.predicate.pose = *pose;
    } else if (key == "shirt_color") {
      if (!value.is_string()) bad_payload(ppath + ".shirt_color", "expected string");
      q.predicate.shirt_color = value.get<std::string>();
    } else if (key == "injured") {
      if (!value.is_boolean()) bad_payload(ppath + ".injured", "expected boolean");
      q.predicate.injured = value.get<bool>();
    } else {
      bad_payload(ppath + "." + key, "unknown attribute");
    }
  }
  return q;
}

json timings_json(const backend::BackendTimings& t) {
  return {{"t_f", finite(t.t_f)},
          {"t_obj", t.t_obj ? json(finite(*t.t_obj)) : json(nullptr)},
          {"stage2_calls", t.stage2_calls},
          {"stages",
           {{"propose", finite(t.stages.propose)},
            {"crop", finite(t.stages.crop)},
            {"verify", finite(t.stages.verify)}}}};
}

backend::BackendTimings timings_from(const json& v, const std::string& path) {
  if (!v.is_object()) bad_payload(path, "expected object");
  backend::BackendTimings t;
  t.t_f = get_number(v, "t_f", path);
  const auto& obj = field(v, "t_obj", path);
  if (!obj.is_null()) t.t_obj = as_number(obj, path + ".t_obj");
  t.stage2_calls = get_int(v, "stage2_calls", path);
  if (t.stage2_calls < 0) bad_payload(path + ".stage2_calls", "must be nonnegative");
  const auto& s = field(v, "stages", path);
  if (!s.is_object()) bad_payload(path + ".stages", "expected object");
  t.stages.propose = get_number(s, "propose", path + ".stages");
  t.stages.crop = get_number(s, "crop", path + ".stages");
  t.stages.verify = get_number(s, "verify", path + ".stages");
  return t;
}

json detection_json(const Detection& d) {
  return {{"box", box_json(d.box)},
          {"detector_score", finite(d.detector_score)},
          {"verified", d.verified},
          {"justification", d.justification}};
}

Detection detection_from(const json& v, const std::string& path) {
  if (!v.is_object()) bad_payload(path, "expected object");
  Detection d;
  d.box = box_from(field(v, "box", path), path + ".box");
  d.detector_score = get_number(v, "detector_score", path);
  if (d.detector_score < 0.0 || d.detector_score > 1.0) {
    bad_payload(path + ".detector_score", "must lie in [0, 1]");
  }
  d.verified = get_bool(v, "verified", path);
  d.justification = get_string(v, "justification", path);
  return d;
}

struct ToJson {
  json operator()(const DetectRequest& m) const {
    if (m.width <= 0 || m.height <= 0 ||
        m.image.size() != static_cast<std::size_t>(m.width) * m.height) {
      throw Error(Errc::kInvalidArgument, "image size does not match width * height");
    }
    return {{"type", "DetectRequest"},
            {"request_id", m.request_id},
            {"query", query_json(m.query)},
            {"frame_index", m.frame_index},
            {"width", m.width},
            {"height", m.height},
            {"image_b64", base64_encode(m.image)}};
  }
  json operator()(const DetectResponse& m) const {
    json dets = json::array();
    for (const auto& d : m.detections) dets.push_back(detection_json(d));
    return {{"type", "DetectResponse"},
            {"request_id", m.request_id},
            {"detections", dets},
            {"timings", timings_json(m.timings)}};
  }
  json operator()(const Ping& m) const {
    return {{"type", "Ping"}, {"request_id", m.request_id}};
  }
  json operator()(const Pong& m) const {
    return {{"type", "Pong"}, {"request_id", m.request_id}};
  }
  json operator()(const ErrorReply& m) const {
    return {{"type", "ErrorReply"},
            {"request_id", m.request_id},
            {"code", m.code},
            {"message", m.message}};
  }
};

WireMessage message_from(const json& v) {
  const std::string root = "$";
  if (!v.is_object()) bad_payload(root, "expected object");
  const auto type = get_string(v, "type", root);
  if (type == "DetectRequest") {
    DetectRequest m;
    m.request_id = get_u64(v, "request_id", root);
    m.query = query_from(field(v, "query", root), root + ".query");
    m.frame_index = get_int(v, "frame_index", root);
    m.width = get_int(v, "width", root);
    m.height = get_int(v, "height", root);
    if (m.width <= 0 || m.height <= 0) bad_payload(root, "image dimensions must be positive");
    m.image = base64_decode(get_string(v, "image_b64", root));
    if (m.image.size() != static_cast<std::size_t>(m.width) * m.height) {
      bad_payload(root + ".image_b64", "decoded length differs from width * height");
    }
    return m;
  }
  if (type == "DetectResponse") {
    DetectResponse m;
    m.request_id = get_u64(v, "request_id", root);
    const auto& dets = field(v, "detections", root);
    if (!dets.is_array()) bad_payload(root + ".detections", "expected array");
    for (std::size_t i = 0; i < dets.size(); ++i) {
      m.detections.push_back(
          detection_from(dets[i], root + ".detections[" + std::to_string(i) + "]"));
    }
    m.timings = timings_from(field(v, "timings", root), root + ".timings");
    return m;
  }
  if (type == "Ping") return Ping{get_u64(v, "request_id", root)};
  if (type == "Pong") return Pong{get_u64(v, "request_id", root)};
  if (type == "ErrorReply") {
    return ErrorReply{get_u64(v, "request_id", root), get_string(v, "code", root),
                      get_string(v, "message", root)};
  }
  throw Error(Errc::kUnknownVariant, "unknown message type '" + type + "'");
}

std::uint32_t read_prefix(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
         (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

}  // namespace

std::string_view variant_name(const WireMessage& msg) {
  static constexpr std::string_view kNames[] = {"DetectRequest", "DetectResponse", "Ping",
                                                "Pong", "ErrorReply"};
  return kNames[msg.index()];
}

std::uint64_t request_id_of(const WireMessage& msg) {
  return std::visit([](const auto& m) { return m.request_id; }, msg);
}

void check_payload_size(std::uint64_t payload_size) {
  if (payload_size > kMaxPayloadBytes) {
    throw Error(Errc::kPayloadTooLarge,
                "payload of " + std::to_string(payload_size) + " bytes exceeds 2^32-1");
  }
}

std::string to_payload(const WireMessage& msg) {
  const json j = std::visit(ToJson{}, msg);
  try {
    return j.dump();
  } catch (const json::type_error& e) {
    throw Error(Errc::kInvalidArgument, std::string("message text is not valid UTF-8: ") + e.what());
  }
}

WireMessage from_payload(std::string_view payload) {
  json j;
  try {
    j = json::parse(payload);
  } catch (const json::parse_error& e) {
    throw Error(Errc::kBadPayload, std::string("malformed JSON: ") + e.what());
  }
  return message_from(j);
}

std::vector<std::uint8_t> encode(const WireMessage& msg) {
  const std::string payload = to_payload(msg);
  check_payload_size(payload.size());
  const auto n = static_cast<std::uint32_t>(payload.size());
  std::vector<std::uint8_t> out;
  out.reserve(kLengthPrefixBytes + payload.size());
  out.push_back(static_cast<std::uint8_t>(n >> 24));
  out.push_back(static_cast<std::uint8_t>(n >> 16));
  out.push_back(static_cast<std::uint8_t>(n >> 8));
  out.push_back(static_cast<std::uint8_t>(n));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

WireMessage decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kLengthPrefixBytes) {
    throw Error(Errc::kBadFrame, "truncated length prefix");
  }
  const std::uint32_t n = read_prefix(bytes.data());
  if (bytes.size() - kLengthPrefixBytes != n) {
    throw Error(Errc::kBadFrame, "length prefix says " + std::to_string(n) + " bytes, got " +
                                     std::to_string(bytes.size() - kLengthPrefixBytes));
  }
  const auto* payload = reinterpret_cast<const char*>(bytes.data() + kLengthPrefixBytes);
  return from_payload(std::string_view(payload, n));
}

void FrameReader::feed(std::span<const std::uint8_t> bytes) {
  buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

std::optional<WireMessage> FrameReader::next() {
  if (buffer_.size() < kLengthPrefixBytes) return std::nullopt;
  std::uint8_t prefix[kLengthPrefixBytes];
  std::copy_n(buffer_.begin(), kLengthPrefixBytes, prefix);
  const std::size_t n = read_prefix(prefix);
  if (buffer_.size() < kLengthPrefixBytes + n) return std::nullopt;
  const auto begin = buffer_.begin() + kLengthPrefixBytes;
  const std::string payload(begin, begin + static_cast<std::ptrdiff_t>(n));
  buffer_.erase(buffer_.begin(), begin + static_cast<std::ptrdiff_t>(n));
  return from_payload(payload);
}

std::vector<WireMessage> decode_all(std::span<const std::uint8_t> bytes) {
  FrameReader reader;
  reader.feed(bytes);
  std::vector<WireMessage> out;
  while (auto msg = reader.next()) out.push_back(std::move(*msg));
  if (reader.buffered() != 0) throw Error(Errc::kBadFrame, "trailing partial frame");
  return out;
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  const std::size_t cap =
      sodium_base64_encoded_len(bytes.size(), sodium_base64_VARIANT_ORIGINAL);
  std::string out(cap, '\0');
  sodium_bin2base64(out.data(), cap, bytes.data(), bytes.size(),
                    sodium_base64_VARIANT_ORIGINAL);
  out.resize(cap - 1);  // drop the terminating NUL
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  std::vector<std::uint8_t> out(text.size() / 4 * 3 + 3);
  std::size_t len = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr, &len, &end,
                        sodium_base64_VARIANT_ORIGINAL) != 0 ||
      end != text.data() + text.size()) {
    throw Error(Errc::kBadPayload, "invalid base64 image data");
  }
  out.resize(len);
  return out;
}

}  // namespace skytrack::protocol
