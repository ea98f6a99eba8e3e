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

#include "wholebody/stats.hpp"

#include <cstdio>

#include <json.hpp>

#include "wholebody/schema.hpp"

namespace wholebody {

DatasetStats compute_stats(const AnnotationSet& set) {
  DatasetStats stats;
  stats.image_count = static_cast<std::int64_t>(set.images.size());
  stats.person_count = static_cast<std::int64_t>(set.annotations.size());

  std::map<std::int64_t, int> per_image;
  for (const ImageRecord& img : set.images) per_image[img.id] = 0;
  for (const PersonAnnotation& ann : set.annotations) {
    per_image[ann.image_id] += 1;
  }
  for (const auto& [_, count] : per_image) {
    stats.persons_per_image[count] += 1;
  }

  std::array<std::int64_t, 5> labeled{};
  std::array<std::int64_t, 5> slots{};
  bool any_area = false;
  double area_sum = 0.0;
  for (const PersonAnnotation& ann : set.annotations) {
    for (PartKind kind : kAllParts) {
      const IndexRange r = part_range(kind);
      if (static_cast<int>(ann.keypoints.size()) < r.end) continue;
      const auto p = static_cast<std::size_t>(kind);
      slots[p] += r.size();
      for (int i = r.begin; i < r.end; ++i) {
        if (is_labeled(ann.keypoints[i])) ++labeled[p];
      }
    }
    const double area = ann.area;
    if (!any_area) {
      stats.area_min = stats.area_max = area;
      any_area = true;
    } else {
      stats.area_min = std::min(stats.area_min, area);
      stats.area_max = std::max(stats.area_max, area);
    }
    area_sum += area;
    if (area > 96.0 * 96.0) {
      ++stats.area_large;
    } else if (area > 32.0 * 32.0) {
      ++stats.area_medium;
    } else {
      ++stats.area_small;
    }
  }
  stats.area_mean =
      set.annotations.empty() ? 0.0 : area_sum / set.annotations.size();
  for (std::size_t p = 0; p < 5; ++p) {
    stats.part_labeled_rate[p] =
        slots[p] > 0 ? static_cast<double>(labeled[p]) / slots[p] : -1.0;
  }
  return stats;
}

std::string format_stats_table(const DatasetStats& stats) {
  char buf[128];
  std::string out;
  std::snprintf(buf, sizeof(buf), "images   %lld\npersons  %lld\n",
                static_cast<long long>(stats.image_count),
                static_cast<long long>(stats.person_count));
  out += buf;
  out += "persons/image histogram:\n";
  for (const auto& [count, images] : stats.persons_per_image) {
    std::snprintf(buf, sizeof(buf), "  %3d persons  %lld images\n", count,
                  static_cast<long long>(images));
    out += buf;
  }
  out += "labeled-keypoint rate per part:\n";
  for (PartKind kind : kAllParts) {
    const double rate = stats.part_labeled_rate[static_cast<std::size_t>(kind)];
    if (rate < 0.0) {
      std::snprintf(buf, sizeof(buf), "  %-10s -\n", part_name(kind));
    } else {
      std::snprintf(buf, sizeof(buf), "  %-10s %.4f\n", part_name(kind), rate);
    }
    out += buf;
  }
  std::snprintf(buf, sizeof(buf),
                "area  min %.1f  mean %.1f  max %.1f  (small %lld, medium "
                "%lld, large %lld)\n",
                stats.area_min, stats.area_mean, stats.area_max,
                static_cast<long long>(stats.area_small),
                static_cast<long long>(stats.area_medium),
                static_cast<long long>(stats.area_large));
  out += buf;
  return out;
}

std::string format_stats_json(const DatasetStats& stats) {
  nlohmann::json j;
  j["images"] = stats.image_count;
  j["persons"] = stats.person_count;
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [count, images] : stats.persons_per_image) {
    hist[std::to_string(count)] = images;
  }
  j["persons_per_image"] = hist;
  nlohmann::json rates = nlohmann::json::object();
  for (PartKind kind : kAllParts) {
    rates[part_name(kind)] =
        stats.part_labeled_rate[static_cast<std::size_t>(kind)];
  }
  j["part_labeled_rate"] = rates;
  j["area"] = {{"min", stats.area_min},
               {"mean", stats.area_mean},
               {"max", stats.area_max},
               {"small", stats.area_small},
               {"medium", stats.area_medium},
               {"large", stats.area_large}};
  return j.dump(2) + "\n";
}

}  // namespace wholebody
