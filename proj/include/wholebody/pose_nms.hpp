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

#include <vector>

#include "wholebody/types.hpp"

namespace wholebody {

struct NmsParams {
  double lambda = 1.0;       // weight of the spatial-proximity term
  double sigma_soft = 0.1;   // soft-match radius as a fraction of pose scale
  double eta = 1.2;          // poses more similar than this are eliminated
  double score_floor = 0.05; // poses scoring below this are dropped up front
};

// Square root of the labeled-keypoint bounding-box area; 0 for poses with
// fewer than two spatially distinct labeled keypoints.
double pose_scale(const FullBodyPose& pose);

// Similarity between two equal-length poses: a confidence-weighted soft
// keypoint-match term plus lambda times a spatial-proximity term, both
// averaged over jointly labeled keypoints (docs/metrics.md). Larger means
// more redundant; disjoint labeled sets give 0. Degenerate (zero-scale)
// poses compare by exact coordinate equality only.
double pose_distance(const FullBodyPose& p, const FullBodyPose& q,
                     const NmsParams& params = {});

// Greedy elimination: repeatedly retain the highest-scoring pose left and
// delete every pose whose similarity to it exceeds eta. Output is sorted by
// descending score. All poses must be from one image.
std::vector<FullBodyPose> run_nms(std::vector<FullBodyPose> poses,
                                  const NmsParams& params = {});

}  // namespace wholebody
