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

#include "wholebody/proposal.hpp"

#include <cmath>

#include "wholebody/errors.hpp"
#include "wholebody/schema.hpp"

namespace wholebody {

namespace {

void require_body(std::span<const Keypoint> body) {
  if (body.size() < 17) {
    throw Error(ErrorCode::kPartLengthMismatch,
                "expected 17 body keypoints, got " +
                    std::to_string(body.size()));
  }
}

Box square_box(double cx, double cy, double side) {
  return {cx - side / 2.0, cy - side / 2.0, side, side};
}

}  // namespace

std::optional<Box> face_box(std::span<const Keypoint> body,
                            const FaceBoxParams& params) {
  require_body(body);
  const int head_indices[] = {body::kNose, body::kLeftEye, body::kRightEye,
                              body::kLeftEar, body::kRightEar};
  std::vector<const Keypoint*> visible;
  for (int i : head_indices) {
    if (is_labeled(body[i])) visible.push_back(&body[i]);
  }
  if (visible.size() < 2) return std::nullopt;

  double cx = 0.0, cy = 0.0;
  for (const Keypoint* k : visible) {
    cx += k->x;
    cy += k->y;
  }
  cx /= static_cast<double>(visible.size());
  cy /= static_cast<double>(visible.size());

  double spread = 0.0;
  for (std::size_t i = 0; i < visible.size(); ++i) {
    for (std::size_t j = i + 1; j < visible.size(); ++j) {
      spread = std::max(spread, std::hypot(visible[i]->x - visible[j]->x,
                                           visible[i]->y - visible[j]->y));
    }
  }
  const double side = std::max(params.expansion * spread, params.min_side);
  return square_box(cx, cy, side);
}

std::pair<std::optional<Box>, std::optional<Box>> hand_boxes(
    std::span<const Keypoint> body, const HandBoxParams& params) {
  require_body(body);
  auto one_side = [&](int wrist_idx, int elbow_idx) -> std::optional<Box> {
    const Keypoint& wrist = body[wrist_idx];
    const Keypoint& elbow = body[elbow_idx];
    if (!is_labeled(wrist) || !is_labeled(elbow)) return std::nullopt;
    const double dx = wrist.x - elbow.x;
    const double dy = wrist.y - elbow.y;
    const double cx = wrist.x + params.alpha * dx;
    const double cy = wrist.y + params.alpha * dy;
    const double side =
        std::max(params.gamma * std::hypot(dx, dy), params.min_side);
    return square_box(cx, cy, side);
  };
  return {one_side(body::kLeftWrist, body::kLeftElbow),
          one_side(body::kRightWrist, body::kRightElbow)};
}

Box clip_to_image(const Box& box, const ImageRecord& image) {
  const double w = static_cast<double>(image.width);
  const double h = static_cast<double>(image.height);
  const double x0 = std::clamp(box.x, 0.0, w);
  const double y0 = std::clamp(box.y, 0.0, h);
  const double x1 = std::clamp(box.x2(), 0.0, w);
  const double y1 = std::clamp(box.y2(), 0.0, h);
  return {x0, y0, x1 - x0, y1 - y0};
}

}  // namespace wholebody
