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
#include <vector>

#include "wholebody/coco_io.hpp"
#include "wholebody/proposal.hpp"
#include "wholebody/schema.hpp"
#include "wholebody/types.hpp"

namespace wholebody {

struct MergeParams {
  // Minimum IoU between a detection's keypoint box and a person's proposal
  // box for the detection to be assigned to that person.
  double iou_threshold = 0.3;
  // Detector keypoints below this confidence become (0, 0, 0).
  double keypoint_score_floor = 0.05;
  // Foot detections associate against an ankle-anchored square box.
  double foot_expansion = 1.2;
  double foot_min_side = 20.0;
  ProposalParams proposal;
};

// Builds one 133-keypoint pose: body slots copied verbatim from the ground
// truth, each present part record filling its slot range with v = 1, absent
// parts left as (0, 0, 0). Throws kPartLengthMismatch when a record's length
// does not fit its slot range (body ground truth must have 17 keypoints).
FullBodyPose merge_person(const PersonAnnotation& body_gt,
                          const DetectionRecord* foot,
                          const DetectionRecord* face,
                          const DetectionRecord* lhand,
                          const DetectionRecord* rhand,
                          const MergeParams& params = {});

// Greedy association of per-part detections to persons of one image:
// detections in descending score order each take the free person whose
// proposal box has the highest IoU with the detection's keypoint box; pairs
// below iou_threshold stay unassigned. Returns, per person, the index of the
// assigned detection. Result does not depend on the order of `detections`.
std::vector<std::optional<std::size_t>> assign_parts(
    std::span<const PersonAnnotation> persons,
    std::span<const DetectionRecord> detections, PartKind kind,
    double iou_threshold, const MergeParams& params = {});

// Fuses body ground truth with per-part detector outputs into whole-body
// annotations: one 133-keypoint annotation per input person, ids, boxes and
// areas preserved. Null detection sets are treated as empty.
AnnotationSet merge_dataset(const AnnotationSet& gt, const DetectionSet* foot,
                            const DetectionSet* face, const DetectionSet* lhand,
                            const DetectionSet* rhand,
                            const MergeParams& params = {});

}  // namespace wholebody
