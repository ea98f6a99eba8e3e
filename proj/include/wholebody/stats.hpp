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
#include <cstdint>
#include <map>
#include <string>

#include "wholebody/coco_io.hpp"

namespace wholebody {

struct DatasetStats {
  std::int64_t image_count = 0;
  std::int64_t person_count = 0;
  // persons-per-image -> number of images (images without annotations
  // included under key 0).
  std::map<int, std::int64_t> persons_per_image;
  // Fraction of labeled slots per part, over annotations that carry the
  // part's slots at all; -1 when no annotation does.
  std::array<double, 5> part_labeled_rate{};
  double area_min = 0.0;
  double area_mean = 0.0;
  double area_max = 0.0;
  std::int64_t area_small = 0;   // area <= 32^2
  std::int64_t area_medium = 0;  // 32^2 < area < 96^2
  std::int64_t area_large = 0;   // area > 96^2
};

DatasetStats compute_stats(const AnnotationSet& set);

std::string format_stats_table(const DatasetStats& stats);
std::string format_stats_json(const DatasetStats& stats);

}  // namespace wholebody
