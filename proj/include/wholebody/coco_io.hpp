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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wholebody/errors.hpp"
#include "wholebody/schema.hpp"
#include "wholebody/types.hpp"

namespace wholebody {

struct ImageRecord {
  std::int64_t id = 0;
  int width = 0;
  int height = 0;
  std::string file_name;
  nlohmann::json extra = nlohmann::json::object();  // unrecognized fields
};

// One person instance of a keypoint ground-truth file. The keypoints list
// holds either 17 (body-only) or 133 (whole-body) triples.
struct PersonAnnotation {
  std::int64_t id = 0;
  std::int64_t image_id = 0;
  int category_id = 1;
  std::vector<Keypoint> keypoints;
  int num_keypoints = 0;
  Box bbox;
  double area = 0.0;
  int iscrowd = 0;
  nlohmann::json extra = nlohmann::json::object();

  int labeled_count() const;
};

struct AnnotationSet {
  std::vector<ImageRecord> images;
  std::vector<PersonAnnotation> annotations;
  nlohmann::json categories = nlohmann::json::array();
  nlohmann::json extra = nlohmann::json::object();

  const ImageRecord* find_image(std::int64_t id) const;
  std::size_t size() const { return annotations.size(); }
};

// What a detection result file carries. Body ground truth comes from
// annotation files, so Body is not a detection category.
enum class DetectionCategory { Foot, Face, LeftHand, RightHand, WholeBody };

int category_keypoint_count(DetectionCategory category);
const char* category_name(DetectionCategory category);
std::optional<DetectionCategory> category_from_name(std::string_view name);

struct DetectionRecord {
  std::int64_t image_id = 0;
  std::vector<ScoredKeypoint> keypoints;
  double score = 0.0;
  std::int64_t id = 0;  // position in the parsed set; tie-breaker for sorts
  nlohmann::json extra = nlohmann::json::object();

  // Tight box over keypoints with confidence >= floor.
  Box keypoint_bbox(double confidence_floor) const;
};

struct DetectionSet {
  DetectionCategory category = DetectionCategory::WholeBody;
  std::vector<DetectionRecord> records;

  std::size_t size() const { return records.size(); }
};

// Parses a COCO-style keypoint ground-truth file (images / annotations /
// categories arrays). Throws Error with one of kMalformedJson,
// kWrongKeypointCount, kBadVisibility, kDanglingImageRef, kInvalidField.
AnnotationSet parse_ground_truth(std::string_view bytes);

// Parses a flat JSON array of {image_id, category_id, keypoints, score}
// records. Records come out sorted by (image_id, score descending).
// Throws kBadScore for scores outside [0,1] or non-finite ones.
DetectionSet parse_detections(std::string_view bytes, DetectionCategory category);

// Emits a ground-truth file; unknown fields captured at parse time are
// preserved and num_keypoints is recomputed. parse(write(A)) == A.
std::string write_annotations(const AnnotationSet& set);

std::string write_detections(const DetectionSet& set);

struct Violation {
  ErrorCode code = ErrorCode::kInvalidField;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> errors;
  std::vector<Violation> warnings;

  bool clean() const { return errors.empty(); }
};

// Collects every violation instead of stopping at the first. Errors mirror
// what parse_ground_truth would reject; out-of-frame coordinates and
// num_keypoints mismatches are reported as warnings.
ValidationReport validate_ground_truth(std::string_view bytes);
ValidationReport validate_file(const std::string& path);  // kIo on I/O failure

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

}  // namespace wholebody
