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

#include <doctest.h>

#include <string>

#include <json.hpp>

#include "support/builders.hpp"
#include "wholebody/coco_io.hpp"

using namespace wholebody;

namespace {

std::string fixture(const std::string& name) {
  return read_file(std::string(WHOLEBODY_FIXTURE_DIR) + "/" + name);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("minimal ground truth parses") {
  const AnnotationSet set = parse_ground_truth(fixture("gt_minimal.json"));
  CHECK(set.size() == 1);
  CHECK(set.images.size() == 1);
  CHECK(set.images[0].width == 640);
  CHECK(set.annotations[0].keypoints.size() == 17);
  CHECK(set.annotations[0].image_id == 1);
  CHECK(set.annotations[0].num_keypoints ==
        set.annotations[0].labeled_count());
}

TEST_CASE("parser rejections carry their designated error code") {
  CHECK(code_of([] { parse_ground_truth("{nope"); }) ==
        ErrorCode::kMalformedJson);
  CHECK(code_of([] { parse_ground_truth(R"({"images": []})"); }) ==
        ErrorCode::kMalformedJson);
  CHECK(code_of([&] { parse_ground_truth(fixture("gt_bad_kplen.json")); }) ==
        ErrorCode::kWrongKeypointCount);
  CHECK(code_of([&] { parse_ground_truth(fixture("gt_bad_vis.json")); }) ==
        ErrorCode::kBadVisibility);
  CHECK(code_of([&] { parse_ground_truth(fixture("gt_dangling.json")); }) ==
        ErrorCode::kDanglingImageRef);
  CHECK(code_of([&] { parse_ground_truth(fixture("gt_bad_width.json")); }) ==
        ErrorCode::kInvalidField);
}

TEST_CASE("detection parsing") {
  SUBCASE("empty array") {
    const DetectionSet set = parse_detections("[]", DetectionCategory::Face);
    CHECK(set.size() == 0);
  }
  SUBCASE("hand record with 63 values is a valid hand detection") {
    const DetectionSet set = parse_detections(fixture("det_hand_ok.json"),
                                              DetectionCategory::LeftHand);
    CHECK(set.size() == 1);
    CHECK(set.records[0].keypoints.size() == 21);
  }
  SUBCASE("category length mismatch") {
    CHECK(code_of([&] {
            parse_detections(fixture("det_hand_ok.json"),
                             DetectionCategory::Face);
          }) == ErrorCode::kWrongKeypointCount);
  }
  SUBCASE("scores outside [0,1] or non-finite are rejected") {
    CHECK(code_of([&] {
            parse_detections(fixture("det_bad_score.json"),
                             DetectionCategory::LeftHand);
          }) == ErrorCode::kBadScore);
    CHECK(code_of([&] {
            parse_detections(fixture("det_bad_score_inf.json"),
                             DetectionCategory::LeftHand);
          }) == ErrorCode::kBadScore);
  }
  SUBCASE("records sort by image then descending score") {
    const std::string two = R"([
      {"image_id": 1, "keypoints": [1,1,0.5, 2,2,0.5, 3,3,0.5, 4,4,0.5, 5,5,0.5, 6,6,0.5], "score": 0.3},
      {"image_id": 1, "keypoints": [1,1,0.5, 2,2,0.5, 3,3,0.5, 4,4,0.5, 5,5,0.5, 6,6,0.5], "score": 0.9}
    ])";
    const DetectionSet set = parse_detections(two, DetectionCategory::Foot);
    REQUIRE(set.size() == 2);
    CHECK(set.records[0].score == 0.9);
    CHECK(set.records[1].score == 0.3);
    CHECK(set.records[0].id == 0);
    CHECK(set.records[1].id == 1);
  }
}

TEST_CASE("write/parse round trip is the identity") {
  AnnotationSet set = parse_ground_truth(fixture("gt_minimal.json"));
  // Unknown fields must survive.
  set.annotations[0].extra["segmentation"] = nlohmann::json::array({1, 2, 3});
  const std::string bytes = write_annotations(set);
  const AnnotationSet reparsed = parse_ground_truth(bytes);
  CHECK(write_annotations(reparsed) == bytes);
  CHECK(reparsed.annotations[0].extra["segmentation"].size() == 3);
  CHECK(reparsed.extra.contains("info"));
  CHECK(reparsed.annotations[0].keypoints.size() == 17);
  for (std::size_t i = 0; i < 17; ++i) {
    CHECK(reparsed.annotations[0].keypoints[i].x ==
          set.annotations[0].keypoints[i].x);
    CHECK(reparsed.annotations[0].keypoints[i].v ==
          set.annotations[0].keypoints[i].v);
  }
}

TEST_CASE("whole-body annotations write 399-entry keypoint arrays") {
  AnnotationSet set;
  set.images.push_back(testkit::make_image(1));
  std::vector<Keypoint> kps(133);
  for (int i = 0; i < 133; ++i) kps[i] = {10.0 + i, 20.0 + i, 2};
  set.annotations.push_back(testkit::make_person(7, 1, kps, 5000.0));
  const auto j = nlohmann::json::parse(write_annotations(set));
  CHECK(j["annotations"][0]["keypoints"].size() == 399);
  CHECK(j["annotations"][0]["num_keypoints"] == 133);
}

TEST_CASE("num_keypoints is recomputed on write") {
  AnnotationSet set = parse_ground_truth(fixture("gt_minimal.json"));
  set.annotations[0].num_keypoints = 3;  // deliberately wrong
  const auto j = nlohmann::json::parse(write_annotations(set));
  CHECK(j["annotations"][0]["num_keypoints"] ==
        set.annotations[0].labeled_count());
}

TEST_CASE("validation collects violations instead of throwing") {
  SUBCASE("clean fixture") {
    const ValidationReport report =
        validate_ground_truth(fixture("gt_minimal.json"));
    CHECK(report.clean());
    CHECK(report.warnings.empty());
  }
  SUBCASE("negative width is one violation") {
    const ValidationReport report =
        validate_ground_truth(fixture("gt_bad_width.json"));
    CHECK(report.errors.size() == 1);
    CHECK(report.errors[0].code == ErrorCode::kInvalidField);
  }
  SUBCASE("out-of-frame keypoint is a warning, not an error") {
    const ValidationReport report =
        validate_ground_truth(fixture("gt_out_of_frame.json"));
    CHECK(report.clean());
    REQUIRE(!report.warnings.empty());
    CHECK(report.warnings[0].code == ErrorCode::kOutOfBounds);
  }
  SUBCASE("every malformed fixture class is caught") {
    CHECK(!validate_ground_truth(fixture("gt_bad_kplen.json")).clean());
    CHECK(!validate_ground_truth(fixture("gt_bad_vis.json")).clean());
    CHECK(!validate_ground_truth(fixture("gt_dangling.json")).clean());
  }
}

TEST_CASE("detection round trip") {
  const DetectionSet set = parse_detections(fixture("det_hand_ok.json"),
                                            DetectionCategory::LeftHand);
  const std::string bytes = write_detections(set);
  const DetectionSet reparsed =
      parse_detections(bytes, DetectionCategory::LeftHand);
  CHECK(write_detections(reparsed) == bytes);
}
