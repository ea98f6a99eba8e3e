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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wholebody/coco_io.hpp"
#include "wholebody/schema.hpp"
#include "wholebody/types.hpp"

namespace wholebody {

struct EvalParams {
  int max_detections = 20;  // per-image cap, applied before matching
  // Medium persons satisfy area_medium_min < area < area_medium_max;
  // large persons satisfy area > area_medium_max.
  double area_medium_min = 32.0 * 32.0;
  double area_medium_max = 96.0 * 96.0;
};

// The ten summary metrics. Metrics with no ground truth of their class are
// kUndefined (-1 in machine output, an em dash in tables).
struct EvalReport {
  static constexpr double kUndefined = -1.0;

  double map = kUndefined;
  double ap50 = kUndefined;
  double ap75 = kUndefined;
  double ap_medium = kUndefined;
  double ap_large = kUndefined;
  double mar = kUndefined;
  double ar50 = kUndefined;
  double ar75 = kUndefined;
  double ar_medium = kUndefined;
  double ar_large = kUndefined;
};

struct DetectionMatch {
  std::optional<std::int64_t> gt_id;  // matched ground-truth annotation id
  double oks = 0.0;                   // similarity of the match, 0 if none
};

struct MatchResult {
  std::vector<DetectionMatch> detections;  // parallel to the input order
  std::vector<bool> gt_matched;            // parallel to the gt list
};

// Keypoint similarity in [0, 1]: mean over labeled ground-truth keypoints of
// exp(-d^2 / (2 * area * (2 * sigma_i)^2)). Returns 0 when the ground truth
// has no labeled keypoints. Requires gt.area > 0 when any keypoint is labeled.
double oks(const FullBodyPose& det, const PersonAnnotation& gt,
           const SigmaTable& sigmas);
double oks(std::span<const ScoredKeypoint> det_keypoints,
           const PersonAnnotation& gt, const SigmaTable& sigmas);

// Greedy matching at one threshold: detections in descending score order
// each take the unmatched ground truth with the highest OKS >= threshold.
MatchResult match_image(std::span<const FullBodyPose> dets,
                        std::span<const PersonAnnotation> gts, double threshold,
                        const SigmaTable& sigmas);

// AP/AR over OKS thresholds 0.50:0.05:0.95 with COCO-style greedy matching,
// monotone precision envelope and 101-point interpolation. Protocol details
// in docs/metrics.md. Results must reference images present in gt.
EvalReport evaluate(const AnnotationSet& gt, const DetectionSet& results,
                    const SigmaTable& sigmas = SigmaTable(),
                    const EvalParams& params = {});

// Same protocol restricted to one part's index range (part-only OKS).
EvalReport evaluate_part(const AnnotationSet& gt, const DetectionSet& results,
                         PartKind kind, const SigmaTable& sigmas = SigmaTable(),
                         const EvalParams& params = {});

std::vector<std::pair<PartKind, EvalReport>> per_part_report(
    const AnnotationSet& gt, const DetectionSet& results,
    const SigmaTable& sigmas = SigmaTable(), const EvalParams& params = {});

// Report formatting; rows are (label, report) pairs.
using ReportRows = std::vector<std::pair<std::string, EvalReport>>;
std::string format_reports_table(const ReportRows& rows);
std::string format_reports_json(const ReportRows& rows);
std::string format_reports_csv(const ReportRows& rows);

}  // namespace wholebody
