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

#include "wholebody/merge.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "wholebody/errors.hpp"
#include "wholebody/parallel.hpp"

namespace wholebody {

namespace {

PartKind category_part(DetectionCategory category) {
  switch (category) {
    case DetectionCategory::Foot:
      return PartKind::Foot;
    case DetectionCategory::Face:
      return PartKind::Face;
    case DetectionCategory::LeftHand:
      return PartKind::LeftHand;
    case DetectionCategory::RightHand:
      return PartKind::RightHand;
    case DetectionCategory::WholeBody:
      break;
  }
  throw Error(ErrorCode::kInvalidField,
              "whole-body detections cannot be merged as a part");
}

void fill_part_slots(std::vector<Keypoint>& out, PartKind kind,
                     const DetectionRecord& record, double score_floor) {
  const IndexRange range = part_range(kind);
  if (record.keypoints.size() != static_cast<std::size_t>(range.size())) {
    throw Error(ErrorCode::kPartLengthMismatch,
                std::string(part_name(kind)) + " record has " +
                    std::to_string(record.keypoints.size()) +
                    " keypoints, expected " + std::to_string(range.size()));
  }
  for (int i = 0; i < range.size(); ++i) {
    const ScoredKeypoint& k = record.keypoints[i];
    if (k.c >= score_floor) {
      out[range.begin + i] = {k.x, k.y, 1};
    }
  }
}

// Square box anchored at the visible ankles; foot detections are associated
// against it the way face/hand detections are against their proposal boxes.
std::optional<Box> foot_anchor_box(std::span<const Keypoint> body,
                                   const MergeParams& params) {
  const Keypoint& left = body[body::kLeftAnkle];
  const Keypoint& right = body[body::kRightAnkle];
  double cx = 0.0, cy = 0.0, span = 0.0;
  if (is_labeled(left) && is_labeled(right)) {
    cx = (left.x + right.x) / 2.0;
    cy = (left.y + right.y) / 2.0;
    span = std::hypot(left.x - right.x, left.y - right.y);
  } else if (is_labeled(left)) {
    cx = left.x;
    cy = left.y;
  } else if (is_labeled(right)) {
    cx = right.x;
    cy = right.y;
  } else {
    return std::nullopt;
  }
  const double side =
      std::max(params.foot_expansion * span, params.foot_min_side);
  return Box{cx - side / 2.0, cy - side / 2.0, side, side};
}

std::optional<Box> proposal_box(const PersonAnnotation& person, PartKind kind,
                                const MergeParams& params) {
  std::span<const Keypoint> body(person.keypoints.data(),
                                 std::min<std::size_t>(person.keypoints.size(), 17));
  switch (kind) {
    case PartKind::Face:
      return face_box(body, params.proposal.face);
    case PartKind::LeftHand:
      return hand_boxes(body, params.proposal.hand).first;
    case PartKind::RightHand:
      return hand_boxes(body, params.proposal.hand).second;
    case PartKind::Foot:
      return foot_anchor_box(body, params);
    case PartKind::Body:
      break;
  }
  throw Error(ErrorCode::kInvalidField, "body is not an assignable part");
}

// Canonical processing order: score descending, then record content, then
// id. Content before id keeps the result independent of input record order.
bool canonical_before(const DetectionRecord& a, const DetectionRecord& b) {
  if (a.score != b.score) return a.score > b.score;
  const std::size_t n = std::min(a.keypoints.size(), b.keypoints.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.keypoints[i].x != b.keypoints[i].x) return a.keypoints[i].x < b.keypoints[i].x;
    if (a.keypoints[i].y != b.keypoints[i].y) return a.keypoints[i].y < b.keypoints[i].y;
    if (a.keypoints[i].c != b.keypoints[i].c) return a.keypoints[i].c < b.keypoints[i].c;
  }
  if (a.keypoints.size() != b.keypoints.size()) {
    return a.keypoints.size() < b.keypoints.size();
  }
  return a.id < b.id;
}

}  // namespace

FullBodyPose merge_person(const PersonAnnotation& body_gt,
                          const DetectionRecord* foot,
                          const DetectionRecord* face,
                          const DetectionRecord* lhand,
                          const DetectionRecord* rhand,
                          const MergeParams& params) {
  if (body_gt.keypoints.size() != 17) {
    throw Error(ErrorCode::kPartLengthMismatch,
                "body ground truth has " +
                    std::to_string(body_gt.keypoints.size()) +
                    " keypoints, expected 17");
  }
  FullBodyPose pose;
  pose.keypoints.assign(kKeypointCount, Keypoint{});
  std::copy(body_gt.keypoints.begin(), body_gt.keypoints.end(),
            pose.keypoints.begin());
  if (foot) fill_part_slots(pose.keypoints, PartKind::Foot, *foot,
                            params.keypoint_score_floor);
  if (face) fill_part_slots(pose.keypoints, PartKind::Face, *face,
                            params.keypoint_score_floor);
  if (lhand) fill_part_slots(pose.keypoints, PartKind::LeftHand, *lhand,
                             params.keypoint_score_floor);
  if (rhand) fill_part_slots(pose.keypoints, PartKind::RightHand, *rhand,
                             params.keypoint_score_floor);
  pose.score = 1.0;
  pose.person_id = body_gt.id;
  pose.image_id = body_gt.image_id;
  return pose;
}

std::vector<std::optional<std::size_t>> assign_parts(
    std::span<const PersonAnnotation> persons,
    std::span<const DetectionRecord> detections, PartKind kind,
    double iou_threshold, const MergeParams& params) {
  std::vector<std::optional<Box>> proposals(persons.size());
  for (std::size_t p = 0; p < persons.size(); ++p) {
    proposals[p] = proposal_box(persons[p], kind, params);
  }

  std::vector<std::size_t> order(detections.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return canonical_before(detections[a], detections[b]);
  });

  std::vector<std::optional<std::size_t>> assigned(persons.size());
  std::vector<bool> person_taken(persons.size(), false);
  for (std::size_t d : order) {
    const Box det_box =
        detections[d].keypoint_bbox(params.keypoint_score_floor);
    double best_iou = iou_threshold;
    std::ptrdiff_t best = -1;
    for (std::size_t p = 0; p < persons.size(); ++p) {
      if (person_taken[p] || !proposals[p]) continue;
      const double overlap = iou(det_box, *proposals[p]);
      if (overlap > best_iou || (best < 0 && overlap >= iou_threshold)) {
        best_iou = overlap;
        best = static_cast<std::ptrdiff_t>(p);
      }
    }
    if (best >= 0) {
      person_taken[best] = true;
      assigned[best] = d;
    }
  }
  return assigned;
}

AnnotationSet merge_dataset(const AnnotationSet& gt, const DetectionSet* foot,
                            const DetectionSet* face, const DetectionSet* lhand,
                            const DetectionSet* rhand,
                            const MergeParams& params) {
  struct PartInput {
    const DetectionSet* set;
    PartKind kind;
  };
  std::vector<PartInput> parts;
  for (const auto& [set, fallback_kind] :
       std::initializer_list<std::pair<const DetectionSet*, PartKind>>{
           {foot, PartKind::Foot},
           {face, PartKind::Face},
           {lhand, PartKind::LeftHand},
           {rhand, PartKind::RightHand}}) {
    if (set == nullptr) continue;
    const PartKind kind = category_part(set->category);
    if (kind != fallback_kind) {
      throw Error(ErrorCode::kInvalidField,
                  std::string("detection set of category ") +
                      category_name(set->category) + " passed in the " +
                      part_name(fallback_kind) + " slot");
    }
    parts.push_back({set, kind});
  }

  // Per-image person and detection indices.
  std::map<std::int64_t, std::vector<std::size_t>> persons_by_image;
  for (std::size_t i = 0; i < gt.annotations.size(); ++i) {
    persons_by_image[gt.annotations[i].image_id].push_back(i);
  }
  std::vector<std::int64_t> image_ids;
  image_ids.reserve(persons_by_image.size());
  for (const auto& [image_id, _] : persons_by_image) image_ids.push_back(image_id);

  std::vector<FullBodyPose> merged(gt.annotations.size());
  parallel_for(image_ids.size(), [&](std::size_t img_idx) {
    const std::int64_t image_id = image_ids[img_idx];
    const std::vector<std::size_t>& person_indices =
        persons_by_image.at(image_id);
    std::vector<PersonAnnotation> persons;
    persons.reserve(person_indices.size());
    for (std::size_t i : person_indices) persons.push_back(gt.annotations[i]);

    // kind -> per-person detection pointer
    std::map<PartKind, std::vector<const DetectionRecord*>> chosen;
    for (const PartInput& part : parts) {
      std::vector<DetectionRecord> dets;
      for (const DetectionRecord& rec : part.set->records) {
        if (rec.image_id == image_id) dets.push_back(rec);
      }
      const auto assigned =
          assign_parts(persons, dets, part.kind, params.iou_threshold, params);
      std::vector<const DetectionRecord*> per_person(persons.size(), nullptr);
      for (std::size_t p = 0; p < persons.size(); ++p) {
        if (assigned[p]) {
          // Index into the image-local list; keep the record alive via the
          // input set, which owns identical content.
          std::size_t local = *assigned[p];
          std::int64_t rec_id = dets[local].id;
          for (const DetectionRecord& rec : part.set->records) {
            if (rec.id == rec_id) {
              per_person[p] = &rec;
              break;
            }
          }
        }
      }
      chosen[part.kind] = std::move(per_person);
    }

    auto pick = [&](PartKind kind, std::size_t p) -> const DetectionRecord* {
      auto it = chosen.find(kind);
      return it == chosen.end() ? nullptr : it->second[p];
    };
    for (std::size_t p = 0; p < persons.size(); ++p) {
      merged[person_indices[p]] = merge_person(
          persons[p], pick(PartKind::Foot, p), pick(PartKind::Face, p),
          pick(PartKind::LeftHand, p), pick(PartKind::RightHand, p), params);
    }
  });

  AnnotationSet out;
  out.images = gt.images;
  out.extra = gt.extra;
  out.annotations.reserve(gt.annotations.size());
  for (std::size_t i = 0; i < gt.annotations.size(); ++i) {
    PersonAnnotation ann = gt.annotations[i];
    ann.keypoints = merged[i].keypoints;
    ann.num_keypoints = ann.labeled_count();
    out.annotations.push_back(std::move(ann));
  }

  // Whole-body person category: keep the input category id, extend the
  // keypoint list and skeleton (1-based indices, COCO style).
  nlohmann::json category = nlohmann::json::object();
  int category_id = 1;
  if (!gt.annotations.empty()) category_id = gt.annotations.front().category_id;
  category["id"] = category_id;
  category["name"] = "person";
  category["supercategory"] = "person";
  category["keypoints"] = keypoint_names();
  nlohmann::json edges = nlohmann::json::array();
  for (const SkeletonEdge& e : skeleton()) edges.push_back({e.a + 1, e.b + 1});
  category["skeleton"] = std::move(edges);
  out.categories = nlohmann::json::array({category});
  return out;
}

}  // namespace wholebody
