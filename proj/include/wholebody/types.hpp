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

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace wholebody {

// One annotated keypoint. Visibility follows the COCO convention:
// 0 = unlabeled, 1 = labeled but occluded, 2 = labeled and visible.
// Unlabeled keypoints carry x = y = 0.
struct Keypoint {
  double x = 0.0;
  double y = 0.0;
  int v = 0;
};

inline bool is_labeled(const Keypoint& k) { return k.v > 0; }

// One detector-produced keypoint; c is the detector confidence.
struct ScoredKeypoint {
  double x = 0.0;
  double y = 0.0;
  double c = 0.0;
};

// Axis-aligned box in image pixels, (x, y) = top-left corner.
struct Box {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  double x2() const { return x + w; }
  double y2() const { return y + h; }
  bool empty() const { return w <= 0.0 || h <= 0.0; }
};

inline double iou(const Box& a, const Box& b) {
  const double ix = std::max(0.0, std::min(a.x2(), b.x2()) - std::max(a.x, b.x));
  const double iy = std::max(0.0, std::min(a.y2(), b.y2()) - std::max(a.y, b.y));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

// Tight bounding box over labeled keypoints; zero box when none are labeled.
Box labeled_bbox(std::span<const Keypoint> keypoints);

// A 133-keypoint pose for one person instance.
struct FullBodyPose {
  std::vector<Keypoint> keypoints;
  double score = 1.0;
  std::int64_t person_id = 0;
  std::int64_t image_id = 0;
};

}  // namespace wholebody
