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

#include "wholebody/pose_nms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wholebody/errors.hpp"

namespace wholebody {

namespace {

void check_params(const NmsParams& p) {
  if (!(p.lambda > 0.0) || !(p.sigma_soft > 0.0) || !(p.eta > 0.0) ||
      !(p.score_floor > 0.0) || !std::isfinite(p.eta)) {
    throw Error(ErrorCode::kInvalidField,
                "pose NMS parameters must be positive and eta finite");
  }
}

// Exact equality of the labeled keypoint sets and their coordinates; the
// comparison used for degenerate (zero-scale) poses.
bool exactly_equal(const FullBodyPose& p, const FullBodyPose& q) {
  for (std::size_t i = 0; i < p.keypoints.size(); ++i) {
    const Keypoint& a = p.keypoints[i];
    const Keypoint& b = q.keypoints[i];
    if (is_labeled(a) != is_labeled(b)) return false;
    if (is_labeled(a) && (a.x != b.x || a.y != b.y)) return false;
  }
  return true;
}

}  // namespace

double pose_scale(const FullBodyPose& pose) {
  const Box box = labeled_bbox(pose.keypoints);
  return std::sqrt(box.area());
}

double pose_distance(const FullBodyPose& p, const FullBodyPose& q,
                     const NmsParams& params) {
  check_params(params);
  if (p.keypoints.size() != q.keypoints.size()) {
    throw Error(ErrorCode::kPartLengthMismatch,
                "poses must have the same keypoint count");
  }
  const double sp = pose_scale(p);
  const double sq = pose_scale(q);
  if (sp == 0.0 || sq == 0.0) {
    bool joint = false;
    for (std::size_t i = 0; i < p.keypoints.size(); ++i) {
      if (is_labeled(p.keypoints[i]) && is_labeled(q.keypoints[i])) {
        joint = true;
        break;
      }
    }
    if (!joint) return 0.0;
    return exactly_equal(p, q) ? std::numeric_limits<double>::infinity() : 0.0;
  }

  const double radius = params.sigma_soft * 0.5 * (sp + sq);
  int joint_count = 0;
  int matched = 0;
  double proximity_sum = 0.0;
  for (std::size_t i = 0; i < p.keypoints.size(); ++i) {
    const Keypoint& a = p.keypoints[i];
    const Keypoint& b = q.keypoints[i];
    if (!is_labeled(a) || !is_labeled(b)) continue;
    ++joint_count;
    const double d2 = (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
    if (d2 <= radius * radius) ++matched;
    proximity_sum += std::exp(-d2 / (2.0 * radius * radius));
  }
  if (joint_count == 0) return 0.0;
  const double match_sim =
      (static_cast<double>(matched) / joint_count) * p.score * q.score;
  const double proximity_sim = proximity_sum / joint_count;
  return match_sim + params.lambda * proximity_sim;
}

std::vector<FullBodyPose> run_nms(std::vector<FullBodyPose> poses,
                                  const NmsParams& params) {
  check_params(params);
  std::vector<std::size_t> order;
  order.reserve(poses.size());
  for (std::size_t i = 0; i < poses.size(); ++i) {
    if (poses[i].score >= params.score_floor) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return poses[a].score > poses[b].score;
  });

  std::vector<FullBodyPose> kept;
  std::vector<bool> alive(poses.size(), true);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t i = order[pos];
    if (!alive[i]) continue;
    kept.push_back(poses[i]);
    for (std::size_t rest = pos + 1; rest < order.size(); ++rest) {
      const std::size_t j = order[rest];
      if (!alive[j]) continue;
      if (pose_distance(poses[i], poses[j], params) > params.eta) {
        alive[j] = false;
      }
    }
  }
  return kept;
}

}  // namespace wholebody
