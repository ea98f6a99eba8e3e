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

#include "wholebody/heatmap.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "wholebody/errors.hpp"
#include "wholebody/schema.hpp"

namespace wholebody {

namespace {

constexpr char kDumpMagic[4] = {'W', 'B', 'H', 'M'};
constexpr std::uint32_t kDumpVersion = 1;

void check_params(const HeatmapParams& p) {
  if (p.stride <= 0 || p.input_height <= 0 || p.input_width <= 0 ||
      p.input_height % p.stride != 0 || p.input_width % p.stride != 0) {
    throw Error(ErrorCode::kInvalidField,
                "input resolution must be a positive multiple of the stride");
  }
  if (!(p.sigma_px > 0.0)) {
    throw Error(ErrorCode::kInvalidField, "sigma_px must be positive");
  }
}

// +-0.25 px toward the larger of the two neighbors; borders look at the
// available side only.
double quarter_offset(double before, double after) {
  if (after > before) return 0.25;
  if (before > after) return -0.25;
  return 0.0;
}

}  // namespace

HeatmapStack::HeatmapStack(int planes, int height, int width)
    : planes_(planes), height_(height), width_(width),
      data_(static_cast<std::size_t>(planes) * height * width, 0.0f) {
  if (planes <= 0 || height <= 0 || width <= 0) {
    throw Error(ErrorCode::kInvalidField, "heatmap dimensions must be positive");
  }
}

std::span<const float> HeatmapStack::plane(int p) const {
  const std::size_t plane_size =
      static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
  return {data_.data() + static_cast<std::size_t>(p) * plane_size, plane_size};
}

HeatmapStack encode(const FullBodyPose& pose, const HeatmapParams& params) {
  check_params(params);
  const int height = params.input_height / params.stride;
  const int width = params.input_width / params.stride;
  HeatmapStack stack(static_cast<int>(pose.keypoints.size()), height, width);
  const double inv_two_sigma_sq = 1.0 / (2.0 * params.sigma_px * params.sigma_px);
  for (std::size_t i = 0; i < pose.keypoints.size(); ++i) {
    const Keypoint& k = pose.keypoints[i];
    if (!is_labeled(k)) continue;
    if (k.x < 0.0 || k.x >= params.input_width || k.y < 0.0 ||
        k.y >= params.input_height) {
      throw Error(ErrorCode::kOutOfBounds,
                  "keypoint " + std::to_string(i) + " at (" +
                      std::to_string(k.x) + ", " + std::to_string(k.y) +
                      ") lies outside the input frame");
    }
    const double cx = k.x / params.stride;
    const double cy = k.y / params.stride;
    for (int r = 0; r < height; ++r) {
      const double dy = r - cy;
      for (int c = 0; c < width; ++c) {
        const double dx = c - cx;
        stack.at(static_cast<int>(i), r, c) = static_cast<float>(
            std::exp(-(dx * dx + dy * dy) * inv_two_sigma_sq));
      }
    }
  }
  return stack;
}

FullBodyPose decode(const HeatmapStack& stack, const HeatmapParams& params) {
  check_params(params);
  FullBodyPose pose;
  pose.keypoints.assign(stack.planes(), Keypoint{});
  double peak_sum = 0.0;
  int labeled = 0;
  for (int p = 0; p < stack.planes(); ++p) {
    float best = 0.0f;
    int best_r = 0, best_c = 0;
    for (int r = 0; r < stack.height(); ++r) {
      for (int c = 0; c < stack.width(); ++c) {
        const float v = stack.at(p, r, c);
        if (v > best) {
          best = v;
          best_r = r;
          best_c = c;
        }
      }
    }
    if (best <= 0.0f) continue;  // all-zero plane stays (0, 0, 0)
    const double left = best_c > 0 ? stack.at(p, best_r, best_c - 1) : 0.0;
    const double right =
        best_c + 1 < stack.width() ? stack.at(p, best_r, best_c + 1) : 0.0;
    const double up = best_r > 0 ? stack.at(p, best_r - 1, best_c) : 0.0;
    const double down =
        best_r + 1 < stack.height() ? stack.at(p, best_r + 1, best_c) : 0.0;
    const double hx = best_c + quarter_offset(left, right);
    const double hy = best_r + quarter_offset(up, down);
    pose.keypoints[p] = {hx * params.stride, hy * params.stride, 1};
    peak_sum += best;
    ++labeled;
  }
  pose.score = labeled > 0 ? peak_sum / labeled : 0.0;
  return pose;
}

void write_heatmap_dump(const HeatmapStack& stack, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  auto put_u32 = [&](std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
  };
  out.write(kDumpMagic, 4);
  put_u32(kDumpVersion);
  put_u32(static_cast<std::uint32_t>(stack.planes()));
  put_u32(static_cast<std::uint32_t>(stack.height()));
  put_u32(static_cast<std::uint32_t>(stack.width()));
  static_assert(sizeof(float) == 4);
  out.write(reinterpret_cast<const char*>(stack.values().data()),
            static_cast<std::streamsize>(stack.values().size() * sizeof(float)));
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

HeatmapStack read_heatmap_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kDumpMagic, 4) != 0) {
    throw Error(ErrorCode::kInvalidField, path + ": not a heatmap dump");
  }
  auto get_u32 = [&]() {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) |
           (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
  };
  const std::uint32_t version = get_u32();
  if (version != kDumpVersion) {
    throw Error(ErrorCode::kInvalidField,
                path + ": unsupported dump version " + std::to_string(version));
  }
  const std::uint32_t planes = get_u32();
  const std::uint32_t height = get_u32();
  const std::uint32_t width = get_u32();
  if (!in) throw Error(ErrorCode::kIo, "failed reading " + path);
  HeatmapStack stack(static_cast<int>(planes), static_cast<int>(height),
                     static_cast<int>(width));
  in.read(reinterpret_cast<char*>(stack.values().data()),
          static_cast<std::streamsize>(stack.values().size() * sizeof(float)));
  if (!in) throw Error(ErrorCode::kIo, "failed reading " + path);
  return stack;
}

}  // namespace wholebody
