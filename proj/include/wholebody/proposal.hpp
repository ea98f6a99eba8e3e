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

#include <optional>
#include <span>
#include <utility>

#include "wholebody/coco_io.hpp"
#include "wholebody/types.hpp"

namespace wholebody {

struct FaceBoxParams {
  double expansion = 1.6;  // box side = expansion * head keypoint spread
  double min_side = 20.0;  // px
};

struct HandBoxParams {
  double alpha = 0.15;  // center = wrist + alpha * (wrist - elbow)
  double gamma = 1.2;   // box side = gamma * forearm length
  double min_side = 20.0;
};

struct ProposalParams {
  FaceBoxParams face;
  HandBoxParams hand;
};

// Square face region derived from nose, eyes and ears: centered at the
// centroid of the visible head keypoints with side proportional to their
// largest pairwise distance. Absent unless at least two of the five head
// keypoints are labeled. Expects 17 body keypoints.
std::optional<Box> face_box(std::span<const Keypoint> body_keypoints,
                            const FaceBoxParams& params = {});

// Square hand regions extrapolated along the forearm beyond each wrist;
// (left, right). A side is absent unless its wrist and elbow are labeled.
std::pair<std::optional<Box>, std::optional<Box>> hand_boxes(
    std::span<const Keypoint> body_keypoints, const HandBoxParams& params = {});

// Intersects the box with [0, width] x [0, height]; a box fully outside
// collapses to a zero-area box on the nearest border.
Box clip_to_image(const Box& box, const ImageRecord& image);

}  // namespace wholebody
