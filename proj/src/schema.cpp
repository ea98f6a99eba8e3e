// Copyright 2026 The Wholebody Tools Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wholebody/schema.hpp"

#include <json.hpp>

#include "wholebody/coco_io.hpp"
#include "wholebody/errors.hpp"

namespace wholebody {

namespace {

using nlohmann::json;

// Standard COCO body falloff constants, indices 0-16.
constexpr double kBodySigmas[17] = {
    0.026, 0.025, 0.025, 0.035, 0.035, 0.079, 0.079, 0.072, 0.072,
    0.062, 0.062, 0.107, 0.107, 0.087, 0.087, 0.089, 0.089};

constexpr double kDefaultFootSigma = 0.035;
constexpr double kDefaultFaceSigma = 0.012;
constexpr double kDefaultHandSigma = 0.018;

std::vector<double> default_sigma_values() {
  std::vector<double> v(kKeypointCount);
  for (int i = 0; i < 17; ++i) v[i] = kBodySigmas[i];
  for (int i = 17; i < 23; ++i) v[i] = kDefaultFootSigma;
  for (int i = 23; i < 91; ++i) v[i] = kDefaultFaceSigma;
  for (int i = 91; i < 133; ++i) v[i] = kDefaultHandSigma;
  return v;
}

std::vector<std::string> build_names() {
  std::vector<std::string> names;
  names.reserve(kKeypointCount);
  const char* body[] = {"nose",
                        "left_eye",
                        "right_eye",
                        "left_ear",
                        "right_ear",
                        "left_shoulder",
                        "right_shoulder",
                        "left_elbow",
                        "right_elbow",
                        "left_wrist",
                        "right_wrist",
                        "left_hip",
                        "right_hip",
                        "left_knee",
                        "right_knee",
                        "left_ankle",
                        "right_ankle"};
  for (const char* n : body) names.emplace_back(n);
  const char* foot[] = {"left_big_toe",  "left_small_toe",  "left_heel",
                        "right_big_toe", "right_small_toe", "right_heel"};
  for (const char* n : foot) names.emplace_back(n);
  // 68-landmark face convention: jaw 0-16, brows 17-26, nose 27-35,
  // eyes 36-47, lips 48-67.
  for (int i = 0; i < 68; ++i) names.push_back("face_" + std::to_string(i));
  const char* fingers[] = {"thumb", "forefinger", "middle_finger",
                           "ring_finger", "pinky_finger"};
  for (const char* side : {"left", "right"}) {
    names.push_back(std::string(side) + "_hand_root");
    for (const char* finger : fingers) {
      for (int j = 1; j <= 4; ++j) {
        names.push_back(std::string(side) + "_" + finger + std::to_string(j));
      }
    }
  }
  return names;
}

void push_chain(std::vector<SkeletonEdge>& edges, int first, int last,
                bool closed = false) {
  for (int i = first; i < last; ++i) edges.push_back({i, i + 1});
  if (closed) edges.push_back({last, first});
}

std::vector<SkeletonEdge> build_skeleton() {
  std::vector<SkeletonEdge> edges;
  edges.reserve(kSkeletonEdgeCount);
  // Body, standard COCO connectivity.
  const int body_pairs[][2] = {
      {15, 13}, {13, 11}, {16, 14}, {14, 12}, {11, 12}, {5, 11}, {6, 12},
      {5, 6},   {5, 7},   {6, 8},   {7, 9},   {8, 10},  {1, 2},  {0, 1},
      {0, 2},   {1, 3},   {2, 4},   {3, 5},   {4, 6}};
  for (const auto& p : body_pairs) edges.push_back({p[0], p[1]});
  // Foot keypoints hang off their ankle.
  for (int i = 17; i < 20; ++i) edges.push_back({body::kLeftAnkle, i});
  for (int i = 20; i < 23; ++i) edges.push_back({body::kRightAnkle, i});
  // Face, 68-landmark drawing order. Offsets are face-local + 23.
  push_chain(edges, 23 + 0, 23 + 16);         // jaw contour
  push_chain(edges, 23 + 17, 23 + 21);        // right brow
  push_chain(edges, 23 + 22, 23 + 26);        // left brow
  push_chain(edges, 23 + 27, 23 + 30);        // nose bridge
  edges.push_back({23 + 30, 23 + 33});        // bridge to nostril row
  push_chain(edges, 23 + 31, 23 + 35);        // nostril row
  push_chain(edges, 23 + 36, 23 + 41, true);  // right eye
  push_chain(edges, 23 + 42, 23 + 47, true);  // left eye
  push_chain(edges, 23 + 48, 23 + 59, true);  // outer lip
  push_chain(edges, 23 + 60, 23 + 67, true);  // inner lip
  // Hands: wrist link plus four-joint finger chains from the root.
  const int hand_roots[] = {91, 112};
  const int wrists[] = {body::kLeftWrist, body::kRightWrist};
  for (int h = 0; h < 2; ++h) {
    const int root = hand_roots[h];
    edges.push_back({wrists[h], root});
    for (int f = 0; f < 5; ++f) {
      const int base = root + 1 + 4 * f;
      edges.push_back({root, base});
      push_chain(edges, base, base + 3);
    }
  }
  return edges;
}

}  // namespace

int total_keypoints() { return kKeypointCount; }

IndexRange part_range(PartKind kind) {
  switch (kind) {
    case PartKind::Body:
      return {0, 17};
    case PartKind::Foot:
      return {17, 23};
    case PartKind::Face:
      return {23, 91};
    case PartKind::LeftHand:
      return {91, 112};
    case PartKind::RightHand:
      return {112, 133};
  }
  throw Error(ErrorCode::kInvalidField, "unknown part kind");
}

PartKind part_of_index(int index) {
  for (PartKind kind : kAllParts) {
    if (part_range(kind).contains(index)) return kind;
  }
  throw Error(ErrorCode::kOutOfBounds,
              "keypoint index out of range: " + std::to_string(index));
}

const char* part_name(PartKind kind) {
  switch (kind) {
    case PartKind::Body:
      return "body";
    case PartKind::Foot:
      return "foot";
    case PartKind::Face:
      return "face";
    case PartKind::LeftHand:
      return "left_hand";
    case PartKind::RightHand:
      return "right_hand";
  }
  return "unknown";
}

const std::vector<SkeletonEdge>& skeleton() {
  static const std::vector<SkeletonEdge> edges = build_skeleton();
  return edges;
}

const std::vector<std::string>& keypoint_names() {
  static const std::vector<std::string> names = build_names();
  return names;
}

SigmaTable::SigmaTable() : values_(default_sigma_values()) {}

SigmaTable::SigmaTable(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(kKeypointCount)) {
    throw Error(ErrorCode::kInvalidField,
                "sigma table needs " + std::to_string(kKeypointCount) +
                    " entries, got " + std::to_string(values_.size()));
  }
  for (double s : values_) {
    if (!(s > 0.0)) {
      throw Error(ErrorCode::kInvalidField, "sigma entries must be positive");
    }
  }
}

std::string schema_sidecar_json(const SigmaTable& sigmas) {
  json j;
  j["num_keypoints"] = kKeypointCount;
  json parts = json::object();
  for (PartKind kind : kAllParts) {
    const IndexRange r = part_range(kind);
    parts[part_name(kind)] = {{"begin", r.begin}, {"end", r.end}};
  }
  j["parts"] = parts;
  j["keypoint_names"] = keypoint_names();
  json edges = json::array();
  for (const SkeletonEdge& e : skeleton()) edges.push_back({e.a, e.b});
  j["skeleton"] = edges;
  j["sigmas"] = sigmas.values();
  return j.dump(2) + "\n";
}

namespace {

// Either a number (replicated across the part) or a full per-part array.
void fill_part(std::vector<double>& out, const json& value, PartKind kind,
               const char* name) {
  const IndexRange r = part_range(kind);
  if (value.is_number()) {
    for (int i = r.begin; i < r.end; ++i) out[i] = value.get<double>();
    return;
  }
  if (value.is_array() && value.size() == static_cast<std::size_t>(r.size())) {
    for (int i = 0; i < r.size(); ++i) out[r.begin + i] = value[i].get<double>();
    return;
  }
  throw Error(ErrorCode::kInvalidField,
              std::string("sigma entry '") + name + "' must be a number or " +
                  std::to_string(r.size()) + " numbers");
}

}  // namespace

SigmaTable parse_sigmas(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedJson, e.what());
  }
  if (j.is_object() && j.contains("sigmas")) j = j["sigmas"];
  if (j.is_array()) {
    std::vector<double> values;
    values.reserve(j.size());
    for (const auto& x : j) {
      if (!x.is_number()) {
        throw Error(ErrorCode::kInvalidField, "sigma entries must be numbers");
      }
      values.push_back(x.get<double>());
    }
    return SigmaTable(std::move(values));
  }
  if (j.is_object()) {
    std::vector<double> values = SigmaTable().values();
    if (j.contains("body")) fill_part(values, j["body"], PartKind::Body, "body");
    if (j.contains("foot")) fill_part(values, j["foot"], PartKind::Foot, "foot");
    if (j.contains("face")) fill_part(values, j["face"], PartKind::Face, "face");
    if (j.contains("hand")) {
      fill_part(values, j["hand"], PartKind::LeftHand, "hand");
      fill_part(values, j["hand"], PartKind::RightHand, "hand");
    }
    return SigmaTable(std::move(values));
  }
  throw Error(ErrorCode::kInvalidField, "unrecognized sigma file layout");
}

SigmaTable load_sigmas(const std::string& path) {
  return parse_sigmas(read_file(path));
}

}  // namespace wholebody
