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

#include <cmath>
#include <random>
#include <vector>

#include "wholebody/coco_io.hpp"
#include "wholebody/schema.hpp"
#include "wholebody/types.hpp"

namespace testkit {

using namespace wholebody;

inline ImageRecord make_image(std::int64_t id, int width = 640,
                              int height = 480) {
  ImageRecord img;
  img.id = id;
  img.width = width;
  img.height = height;
  img.file_name = std::to_string(id) + ".jpg";
  return img;
}

inline PersonAnnotation make_person(std::int64_t id, std::int64_t image_id,
                                    std::vector<Keypoint> keypoints,
                                    double area, Box bbox = {}) {
  PersonAnnotation ann;
  ann.id = id;
  ann.image_id = image_id;
  ann.keypoints = std::move(keypoints);
  ann.area = area;
  ann.bbox = bbox;
  ann.num_keypoints = ann.labeled_count();
  return ann;
}

// Echoes ground truth back as whole-body results with score 1.
inline DetectionSet echo_results(const AnnotationSet& gt) {
  DetectionSet results;
  results.category = DetectionCategory::WholeBody;
  std::int64_t next_id = 0;
  for (const PersonAnnotation& ann : gt.annotations) {
    DetectionRecord rec;
    rec.image_id = ann.image_id;
    rec.score = 1.0;
    rec.id = next_id++;
    rec.keypoints.reserve(ann.keypoints.size());
    for (const Keypoint& k : ann.keypoints) {
      rec.keypoints.push_back({k.x, k.y, k.v > 0 ? 1.0 : 0.0});
    }
    results.records.push_back(std::move(rec));
  }
  return results;
}

// Random evaluation instance: up to 4 images, 4 persons per image and 6
// detections per image, mixing areas, labeled subsets, score ties, garbage
// detections and near-miss detections.
struct EvalInstance {
  AnnotationSet gt;
  DetectionSet results;
};

inline EvalInstance random_eval_instance(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int K = (rng() % 2 == 0) ? 17 : kKeypointCount;
  EvalInstance inst;
  inst.results.category = DetectionCategory::WholeBody;
  const int n_images = 1 + static_cast<int>(rng() % 4);
  std::int64_t ann_id = 1;
  std::int64_t det_id = 0;
  for (int i = 0; i < n_images; ++i) {
    const std::int64_t image_id = 100 + i;
    inst.gt.images.push_back(make_image(image_id));
    const int n_persons = static_cast<int>(rng() % 5);
    std::vector<const PersonAnnotation*> persons;
    for (int p = 0; p < n_persons; ++p) {
      const double cx = 60.0 + unit(rng) * 520.0;
      const double cy = 60.0 + unit(rng) * 360.0;
      double area = 0.0;
      switch (rng() % 3) {
        case 0:
          area = 150.0 + unit(rng) * 800.0;  // small
          break;
        case 1:
          area = 1100.0 + unit(rng) * 8000.0;  // medium
          break;
        default:
          area = 9400.0 + unit(rng) * 40000.0;  // large
      }
      std::vector<Keypoint> kps(K);
      for (int k = 0; k < K; ++k) {
        if (unit(rng) < 0.7) {
          kps[k] = {cx + (unit(rng) - 0.5) * 60.0,
                    cy + (unit(rng) - 0.5) * 80.0,
                    unit(rng) < 0.5 ? 1 : 2};
        }
      }
      PersonAnnotation ann = make_person(ann_id++, image_id, kps, area);
      inst.gt.annotations.push_back(ann);
    }
    const int n_dets = static_cast<int>(rng() % 7);
    std::vector<const PersonAnnotation*> image_persons;
    for (const PersonAnnotation& a : inst.gt.annotations) {
      if (a.image_id == image_id) image_persons.push_back(&a);
    }
    for (int d = 0; d < n_dets; ++d) {
      DetectionRecord rec;
      rec.image_id = image_id;
      rec.id = det_id++;
      // Coarse scores generate ties across detections and images.
      rec.score = std::round(unit(rng) * 10.0) / 10.0;
      rec.keypoints.resize(K);
      if (!image_persons.empty() && unit(rng) < 0.7) {
        const PersonAnnotation& base =
            *image_persons[rng() % image_persons.size()];
        const double noise = unit(rng) * 0.6 * std::sqrt(base.area);
        for (int k = 0; k < K; ++k) {
          rec.keypoints[k] = {base.keypoints[k].x + (unit(rng) - 0.5) * noise,
                              base.keypoints[k].y + (unit(rng) - 0.5) * noise,
                              1.0};
        }
      } else {
        for (int k = 0; k < K; ++k) {
          rec.keypoints[k] = {unit(rng) * 640.0, unit(rng) * 480.0, 1.0};
        }
      }
      inst.results.records.push_back(std::move(rec));
    }
  }
  return inst;
}

// Random pose cloud for NMS tests: clusters of near-duplicates plus
// isolated poses, every score above the default floor.
inline std::vector<FullBodyPose> random_pose_cloud(std::mt19937& rng,
                                                   int keypoints = 17) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<FullBodyPose> poses;
  const int n_clusters = 1 + static_cast<int>(rng() % 4);
  std::int64_t id = 0;
  for (int c = 0; c < n_clusters; ++c) {
    const double cx = 100.0 + unit(rng) * 400.0;
    const double cy = 100.0 + unit(rng) * 280.0;
    const double spread = 40.0 + unit(rng) * 80.0;
    std::vector<Keypoint> base(keypoints);
    for (int k = 0; k < keypoints; ++k) {
      base[k] = {cx + (unit(rng) - 0.5) * spread,
                 cy + (unit(rng) - 0.5) * spread, 2};
    }
    const int members = 1 + static_cast<int>(rng() % 3);
    for (int m = 0; m < members; ++m) {
      FullBodyPose pose;
      pose.person_id = id++;
      pose.score = 0.2 + unit(rng) * 0.8;
      pose.keypoints = base;
      const double jitter = unit(rng) * 0.2 * spread;
      for (Keypoint& k : pose.keypoints) {
        k.x += (unit(rng) - 0.5) * jitter;
        k.y += (unit(rng) - 0.5) * jitter;
        if (unit(rng) < 0.1) k = {0.0, 0.0, 0};
      }
      poses.push_back(std::move(pose));
    }
  }
  return poses;
}

}  // namespace testkit
