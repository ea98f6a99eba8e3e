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

#pragma once

#include <array>
#include <string>
#include <vector>

namespace wholebody {

// The 133-keypoint whole-body layout: 17 body, 6 foot, 68 face and 21
// keypoints per hand, stored in that order (hands last, left before right).
// See docs/schema.md for the full index table.
enum class PartKind { Body, Foot, Face, LeftHand, RightHand };

constexpr int kKeypointCount = 133;
constexpr std::array<PartKind, 5> kAllParts = {
    PartKind::Body, PartKind::Foot, PartKind::Face, PartKind::LeftHand,
    PartKind::RightHand};

// Half-open keypoint index range [begin, end).
struct IndexRange {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
  bool contains(int i) const { return i >= begin && i < end; }
};

// One connection of the drawing skeleton; a and b index into [0, 133).
struct SkeletonEdge {
  int a = 0;
  int b = 0;
};

// Number of edges in skeleton(). Documented in docs/schema.md.
constexpr int kSkeletonEdgeCount = 131;

int total_keypoints();
IndexRange part_range(PartKind kind);
PartKind part_of_index(int index);
const char* part_name(PartKind kind);
const std::vector<SkeletonEdge>& skeleton();
const std::vector<std::string>& keypoint_names();

// Body joint slots (indices into the body range).
namespace body {
constexpr int kNose = 0;
constexpr int kLeftEye = 1;
constexpr int kRightEye = 2;
constexpr int kLeftEar = 3;
constexpr int kRightEar = 4;
constexpr int kLeftShoulder = 5;
constexpr int kRightShoulder = 6;
constexpr int kLeftElbow = 7;
constexpr int kRightElbow = 8;
constexpr int kLeftWrist = 9;
constexpr int kRightWrist = 10;
constexpr int kLeftHip = 11;
constexpr int kRightHip = 12;
constexpr int kLeftKnee = 13;
constexpr int kRightKnee = 14;
constexpr int kLeftAnkle = 15;
constexpr int kRightAnkle = 16;
}  // namespace body

// Per-keypoint falloff constants used by the keypoint-similarity metric.
// Body entries are the standard COCO constants; foot/face/hand entries
// default to flat per-part values and can be replaced from a JSON sidecar.
class SigmaTable {
 public:
  SigmaTable();  // built-in defaults
  explicit SigmaTable(std::vector<double> values);

  double operator[](int index) const { return values_[index]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

// JSON sidecar with the layout table, keypoint names, skeleton edges and
// sigma values (see docs/formats.md).
std::string schema_sidecar_json(const SigmaTable& sigmas = SigmaTable());

// Accepts either {"sigmas": [133 numbers]} / a bare array, or the per-part
// form {"body": [...17], "foot": s|[...6], "face": s|[...68], "hand": s|[...42]}.
SigmaTable parse_sigmas(const std::string& json_text);
SigmaTable load_sigmas(const std::string& path);

}  // namespace wholebody
