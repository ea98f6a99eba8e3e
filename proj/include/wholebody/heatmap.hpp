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

#include <span>
#include <string>
#include <vector>

#include "wholebody/types.hpp"

namespace wholebody {

struct HeatmapParams {
  int input_height = 256;
  int input_width = 192;
  int stride = 4;  // heatmap resolution = input resolution / stride
  double sigma_px = 2.0;  // Gaussian std in heatmap pixels
};

// 133 heatmap planes, one per keypoint, stored plane-major row-major.
class HeatmapStack {
 public:
  HeatmapStack(int planes, int height, int width);

  float at(int plane, int row, int col) const {
    return data_[(static_cast<std::size_t>(plane) * height_ + row) * width_ + col];
  }
  float& at(int plane, int row, int col) {
    return data_[(static_cast<std::size_t>(plane) * height_ + row) * width_ + col];
  }
  std::span<const float> plane(int p) const;

  int planes() const { return planes_; }
  int height() const { return height_; }
  int width() const { return width_; }
  const std::vector<float>& values() const { return data_; }
  std::vector<float>& values() { return data_; }

 private:
  int planes_;
  int height_;
  int width_;
  std::vector<float> data_;
};

// Renders each labeled keypoint as an unnormalized Gaussian of unit peak
// height centered at (x / stride, y / stride); planes of unlabeled keypoints
// stay all-zero. Throws kOutOfBounds for labeled coordinates outside
// [0, input_width) x [0, input_height).
HeatmapStack encode(const FullBodyPose& pose, const HeatmapParams& params = {});

// Argmax decode with a quarter-pixel shift toward the larger neighbor in
// each axis, scaled back to input coordinates. All-zero planes decode to
// (0, 0, 0); the pose score is the mean peak value over decoded planes.
FullBodyPose decode(const HeatmapStack& stack, const HeatmapParams& params = {});

// Raw binary dump: "WBHM", u32 version, u32 planes/height/width, then
// float32 plane-major row-major values, all little-endian (docs/formats.md).
void write_heatmap_dump(const HeatmapStack& stack, const std::string& path);
HeatmapStack read_heatmap_dump(const std::string& path);

}  // namespace wholebody
