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

#include <cmath>
#include <random>

#include "support/builders.hpp"
#include "support/naive_nms.hpp"
#include "wholebody/pose_nms.hpp"

using namespace wholebody;

namespace {

// Three labeled keypoints spanning a 10 x 10 box, so pose scale is 10.
FullBodyPose three_point_pose(double dx, double dy, double score) {
  FullBodyPose pose;
  pose.keypoints.assign(17, Keypoint{});
  pose.keypoints[0] = {0.0 + dx, 0.0 + dy, 2};
  pose.keypoints[1] = {10.0 + dx, 0.0 + dy, 2};
  pose.keypoints[2] = {0.0 + dx, 10.0 + dy, 2};
  pose.score = score;
  return pose;
}

}  // namespace

TEST_CASE("self-similarity is maximal: score^2 + lambda") {
  const NmsParams params;
  const FullBodyPose p = three_point_pose(0, 0, 0.9);
  CHECK(pose_distance(p, p, params) ==
        doctest::Approx(0.9 * 0.9 + params.lambda).epsilon(1e-12));
}

TEST_CASE("disjoint labeled sets give zero similarity") {
  FullBodyPose p, q;
  p.keypoints.assign(17, Keypoint{});
  q.keypoints.assign(17, Keypoint{});
  p.keypoints[0] = {1, 1, 2};
  p.keypoints[1] = {5, 5, 2};
  p.keypoints[2] = {1, 5, 2};
  q.keypoints[3] = {1, 1, 2};
  q.keypoints[4] = {5, 5, 2};
  q.keypoints[5] = {5, 1, 2};
  CHECK(pose_distance(p, q) == 0.0);
}

TEST_CASE("three-keypoint poses at known offsets match hand computations") {
  const NmsParams params;  // lambda 1, sigma_soft 0.1 -> radius 1 at scale 10
  SUBCASE("diagonal offset sqrt(2), outside the match radius") {
    const FullBodyPose p = three_point_pose(0, 0, 0.9);
    const FullBodyPose q = three_point_pose(1, 1, 0.8);
    // All joint distances sqrt(2) > 1: no soft matches, spatial term
    // exp(-2 / 2) at every keypoint.
    CHECK(pose_distance(p, q, params) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  }
  SUBCASE("offset 0.5, inside the match radius") {
    const FullBodyPose p = three_point_pose(0, 0, 0.9);
    const FullBodyPose q = three_point_pose(0.5, 0, 0.8);
    // Match term 0.9 * 0.8, spatial term exp(-0.25 / 2).
    CHECK(pose_distance(p, q, params) ==
          doctest::Approx(0.72 + std::exp(-0.125)).epsilon(1e-12));
  }
}

TEST_CASE("similarity is symmetric for equal scores") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto cloud = testkit::random_pose_cloud(rng);
    if (cloud.size() < 2) continue;
    cloud[0].score = cloud[1].score = 0.7;
    CHECK(pose_distance(cloud[0], cloud[1]) ==
          pose_distance(cloud[1], cloud[0]));
  }
}

TEST_CASE("degenerate poses compare by exact equality only") {
  FullBodyPose p;
  p.keypoints.assign(17, Keypoint{});
  p.keypoints[4] = {33.0, 44.0, 2};  // single keypoint: zero-area bbox
  FullBodyPose q = p;
  CHECK(pose_distance(p, q) == std::numeric_limits<double>::infinity());
  q.keypoints[4].x += 1e-9;
  CHECK(pose_distance(p, q) == 0.0);
}

TEST_CASE("run_nms basics") {
  const NmsParams params;
  SUBCASE("a single pose survives") {
    std::vector<FullBodyPose> poses = {three_point_pose(0, 0, 0.6)};
    CHECK(run_nms(poses, params).size() == 1);
  }
  SUBCASE("of two identical poses only the higher score survives") {
    std::vector<FullBodyPose> poses = {three_point_pose(0, 0, 0.8),
                                       three_point_pose(0, 0, 0.9)};
    const auto kept = run_nms(poses, params);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].score == 0.9);
  }
  SUBCASE("poses below the score floor are dropped") {
    std::vector<FullBodyPose> poses = {three_point_pose(0, 0, 0.04)};
    CHECK(run_nms(poses, params).empty());
  }
  SUBCASE("output is sorted by descending score") {
    std::vector<FullBodyPose> poses = {three_point_pose(0, 0, 0.5),
                                       three_point_pose(500, 0, 0.9),
                                       three_point_pose(1000, 0, 0.7)};
    const auto kept = run_nms(poses, params);
    REQUIRE(kept.size() == 3);
    CHECK(kept[0].score == 0.9);
    CHECK(kept[1].score == 0.7);
    CHECK(kept[2].score == 0.5);
  }
}

TEST_CASE("a crafted five-pose set equals the naive reference") {
  const NmsParams params;
  std::vector<FullBodyPose> poses = {
      three_point_pose(0, 0, 0.9),    three_point_pose(0.3, 0, 0.8),
      three_point_pose(0.1, 0.1, 0.7), three_point_pose(300, 0, 0.6),
      three_point_pose(300.2, 0, 0.5),
  };
  for (std::size_t i = 0; i < poses.size(); ++i) {
    poses[i].person_id = static_cast<std::int64_t>(i);
  }
  const auto kept = run_nms(poses, params);
  const auto expected = testkit::naive_nms_indices(poses, params);
  REQUIRE(kept.size() == expected.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    CHECK(kept[i].person_id == static_cast<std::int64_t>(expected[i]));
  }
  // Two clusters -> two survivors.
  CHECK(kept.size() == 2);
}

TEST_CASE("random clouds: greedy equals the reference, plus the invariants") {
  std::mt19937 rng(20260809);
  const NmsParams params;
  for (int trial = 0; trial < 60; ++trial) {
    auto poses = testkit::random_pose_cloud(rng);
    for (std::size_t i = 0; i < poses.size(); ++i) {
      poses[i].person_id = static_cast<std::int64_t>(i);
    }
    const auto kept = run_nms(poses, params);
    const auto expected = testkit::naive_nms_indices(poses, params);
    REQUIRE(kept.size() == expected.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
      CHECK(kept[i].person_id == static_cast<std::int64_t>(expected[i]));
    }

    // Idempotence.
    const auto again = run_nms(kept, params);
    REQUIRE(again.size() == kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
      CHECK(again[i].person_id == kept[i].person_id);
    }

    // The top-scoring pose is always retained.
    if (!poses.empty()) {
      std::size_t top = 0;
      for (std::size_t i = 1; i < poses.size(); ++i) {
        if (poses[i].score > poses[top].score) top = i;
      }
      bool found = false;
      for (const auto& pose : kept) {
        if (pose.person_id == static_cast<std::int64_t>(top)) found = true;
      }
      CHECK(found);
    }

    // Joint translation leaves the retained set unchanged.
    auto shifted = poses;
    for (auto& pose : shifted) {
      for (auto& k : pose.keypoints) {
        if (k.v > 0) {
          k.x += 41.25;
          k.y -= 17.5;
        }
      }
    }
    const auto kept_shifted = run_nms(shifted, params);
    REQUIRE(kept_shifted.size() == kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
      CHECK(kept_shifted[i].person_id == kept[i].person_id);
    }
  }
}

TEST_CASE("output size shrinks exactly when some pair exceeds eta") {
  const NmsParams params;
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const auto poses = testkit::random_pose_cloud(rng);
    const auto kept = run_nms(poses, params);
    CHECK(kept.size() <= poses.size());
    bool any_pair_redundant = false;
    for (std::size_t i = 0; i < poses.size(); ++i) {
      for (std::size_t j = i + 1; j < poses.size(); ++j) {
        if (pose_distance(poses[i], poses[j], params) > params.eta) {
          any_pair_redundant = true;
        }
      }
    }
    CHECK((kept.size() < poses.size()) == any_pair_redundant);
  }
}

TEST_CASE("parameter validation") {
  NmsParams params;
  params.eta = -1.0;
  std::vector<FullBodyPose> poses = {three_point_pose(0, 0, 0.9)};
  CHECK_THROWS_AS(run_nms(poses, params), Error);
}
