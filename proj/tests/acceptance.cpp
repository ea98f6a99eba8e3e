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

// Acceptance suite: every check prints one PASS/FAIL line; the binary exits
// nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/builders.hpp"
#include "support/naive_nms.hpp"
#include "support/reference_eval.hpp"
#include "wholebody/coco_io.hpp"
#include "wholebody/eval.hpp"
#include "wholebody/heatmap.hpp"
#include "wholebody/merge.hpp"
#include "wholebody/pose_nms.hpp"
#include "wholebody/proposal.hpp"

using namespace wholebody;

namespace {

std::string fixture_path(const std::string& name) {
  return std::string(WHOLEBODY_FIXTURE_DIR) + "/" + name;
}

std::array<double, 10> metrics_of(const EvalReport& r) {
  return {r.map, r.ap50, r.ap75, r.ap_medium, r.ap_large,
          r.mar, r.ar50, r.ar75, r.ar_medium, r.ar_large};
}

double max_metric_delta(const EvalReport& a, const EvalReport& b) {
  const auto av = metrics_of(a);
  const auto bv = metrics_of(b);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) worst = std::max(worst, std::abs(av[i] - bv[i]));
  return worst;
}

// ---------------------------------------------------------------------------
// Criterion 1: evaluator equals the brute-force reference on 500 randomized
// instances, within 1e-12 per metric, in under 30 seconds.
bool evaluator_oracle_equivalence(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(12345);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const testkit::EvalInstance inst = testkit::random_eval_instance(rng);
    const EvalReport fast = evaluate(inst.gt, inst.results);
    const EvalReport reference =
        refeval::reference_evaluate(inst.gt, inst.results, SigmaTable(), {});
    worst = std::max(worst, max_metric_delta(fast, reference));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::ostringstream os;
  os << "500 instances, max |delta| = " << worst << ", " << seconds << " s";
  detail = os.str();
  return worst <= 1e-12 && seconds < 30.0;
}

// ---------------------------------------------------------------------------
// Criterion 2: feeding ground truth back as results yields 1.0 on every
// defined metric, including the per-part reports.
bool perfect_prediction_identity(std::string& detail) {
  AnnotationSet gt;
  gt.images = {testkit::make_image(1), testkit::make_image(2),
               testkit::make_image(3)};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double areas[] = {1500.0, 4000.0, 20000.0, 48000.0, 2500.0, 30000.0};
  std::int64_t id = 1;
  for (int p = 0; p < 6; ++p) {
    const std::int64_t image_id = 1 + p / 2;
    std::vector<Keypoint> kps(kKeypointCount);
    // Persons sharing an image sit far apart so echoes cannot cross-match.
    const double cx = 100.0 + 350.0 * (p % 2);
    const double cy = 150.0 + 40.0 * p;
    for (int i = 0; i < kKeypointCount; ++i) {
      if (unit(rng) < 0.75) {
        kps[i] = {cx + (unit(rng) - 0.5) * 80.0, cy + (unit(rng) - 0.5) * 120.0,
                  unit(rng) < 0.5 ? 1 : 2};
      }
    }
    // Keep every part represented somewhere in the dataset.
    for (PartKind kind : kAllParts) {
      const IndexRange r = part_range(kind);
      if (!is_labeled(kps[r.begin])) kps[r.begin] = {cx, cy, 2};
    }
    gt.annotations.push_back(
        testkit::make_person(id++, image_id, kps, areas[p]));
  }
  const DetectionSet echo = testkit::echo_results(gt);

  int defined = 0;
  auto all_ones = [&](const EvalReport& r) {
    for (double v : metrics_of(r)) {
      if (v == EvalReport::kUndefined) continue;
      ++defined;
      if (v != 1.0) return false;
    }
    return true;
  };
  bool ok = all_ones(evaluate(gt, echo));
  for (const auto& [kind, report] : per_part_report(gt, echo)) {
    (void)kind;
    ok = ok && all_ones(report);
  }
  std::ostringstream os;
  os << defined << " defined metrics, all exactly 1.0: " << (ok ? "yes" : "no");
  detail = os.str();
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 3: single keypoint with d^2 = 2 * area * (2 sigma)^2 has
// similarity exp(-1).
bool oks_analytic_point(std::string& detail) {
  // sigma = 0.25, area = 2 makes the denominator exactly 1; d = (1, 0).
  const SigmaTable quarter(std::vector<double>(kKeypointCount, 0.25));
  std::vector<Keypoint> kps(17);
  kps[0] = {10.0, 10.0, 2};
  const PersonAnnotation gt = testkit::make_person(1, 1, kps, 2.0);
  FullBodyPose det;
  det.keypoints = kps;
  det.keypoints[0].x += 1.0;
  const double exact = oks(det, gt, quarter);

  // Same point through irrational distances and the default body sigma.
  const SigmaTable sigmas;
  const double area = 137.5;
  const double d2 = 2.0 * area * (2.0 * sigmas[0]) * (2.0 * sigmas[0]);
  std::vector<Keypoint> kps2(17);
  kps2[0] = {50.0, 60.0, 2};
  const PersonAnnotation gt2 = testkit::make_person(2, 1, kps2, area);
  FullBodyPose det2;
  det2.keypoints = kps2;
  det2.keypoints[0].x += std::sqrt(d2);
  const double via_sqrt = oks(det2, gt2, sigmas);

  const double err = std::max(std::abs(exact - std::exp(-1.0)),
                              std::abs(via_sqrt - std::exp(-1.0)));
  std::ostringstream os;
  os << "max |OKS - exp(-1)| = " << err;
  detail = os.str();
  return err <= 1e-12;
}

// ---------------------------------------------------------------------------
// Criterion 4: scaling coordinates by s and areas by s^2 changes nothing.
// The medium/large boundaries are absolute pixel areas, so they scale with
// the data; otherwise persons would change size class and the size-class
// metrics would not be comparable.
bool scale_invariance(std::string& detail) {
  std::mt19937 rng(99);
  const testkit::EvalInstance base = testkit::random_eval_instance(rng);
  const EvalReport reference = evaluate(base.gt, base.results);

  double worst = 0.0;
  for (const double s : {0.5, 3.0}) {
    AnnotationSet gt = base.gt;
    for (PersonAnnotation& ann : gt.annotations) {
      for (Keypoint& k : ann.keypoints) {
        k.x *= s;
        k.y *= s;
      }
      ann.area *= s * s;
      ann.bbox = {ann.bbox.x * s, ann.bbox.y * s, ann.bbox.w * s,
                  ann.bbox.h * s};
    }
    DetectionSet results = base.results;
    for (DetectionRecord& rec : results.records) {
      for (ScoredKeypoint& k : rec.keypoints) {
        k.x *= s;
        k.y *= s;
      }
    }
    EvalParams params;
    params.area_medium_min *= s * s;
    params.area_medium_max *= s * s;
    worst = std::max(
        worst, max_metric_delta(reference, evaluate(gt, results, SigmaTable(),
                                                    params)));
  }
  std::ostringstream os;
  os << "max metric change over s in {0.5, 3.0}: " << worst;
  detail = os.str();
  return worst <= 1e-12;
}

// ---------------------------------------------------------------------------
// Criterion 5: merge output re-parses cleanly, body slots are bit-identical
// to the ground truth and every keypoint array has 399 entries.
bool merge_closure(std::string& detail) {
  const AnnotationSet gt =
      parse_ground_truth(read_file(fixture_path("merge_gt.json")));
  const DetectionSet foot = parse_detections(
      read_file(fixture_path("merge_foot.json")), DetectionCategory::Foot);
  const DetectionSet face = parse_detections(
      read_file(fixture_path("merge_face.json")), DetectionCategory::Face);
  const DetectionSet lhand = parse_detections(
      read_file(fixture_path("merge_lhand.json")), DetectionCategory::LeftHand);
  const DetectionSet rhand =
      parse_detections(read_file(fixture_path("merge_rhand.json")),
                       DetectionCategory::RightHand);
  const AnnotationSet merged = merge_dataset(gt, &foot, &face, &lhand, &rhand);

  const std::string bytes = write_annotations(merged);
  const ValidationReport report = validate_ground_truth(bytes);
  bool ok = report.errors.empty() && report.warnings.empty();

  const AnnotationSet reparsed = parse_ground_truth(bytes);
  ok = ok && reparsed.size() == gt.size();
  int arrays_399 = 0;
  for (std::size_t i = 0; i < reparsed.annotations.size(); ++i) {
    const PersonAnnotation& out = reparsed.annotations[i];
    if (out.keypoints.size() == 133) ++arrays_399;
    for (int k = 0; k < 17; ++k) {
      ok = ok && out.keypoints[k].x == gt.annotations[i].keypoints[k].x &&
           out.keypoints[k].y == gt.annotations[i].keypoints[k].y &&
           out.keypoints[k].v == gt.annotations[i].keypoints[k].v;
    }
  }
  ok = ok && arrays_399 == static_cast<int>(reparsed.size());
  std::ostringstream os;
  os << report.errors.size() << " violations, " << report.warnings.size()
     << " warnings, " << arrays_399 << "/" << reparsed.size()
     << " arrays of length 399, body slots bit-identical: "
     << (ok ? "yes" : "no");
  detail = os.str();
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 6: decode(encode(.)) within 2 input px over an interior grid at
// the 256x192 / 64x48 resolutions.
bool heatmap_round_trip(std::string& detail) {
  const HeatmapParams params;
  const double margin = 2.0 * params.sigma_px * params.stride;  // 16 px
  std::vector<std::pair<double, double>> points;
  for (double x = margin; x <= params.input_width - margin; x += 1.7) {
    for (double y = margin; y <= params.input_height - margin; y += 3.9) {
      points.emplace_back(x, y);
    }
  }
  double worst = 0.0;
  std::size_t consumed = 0;
  while (consumed < points.size()) {
    FullBodyPose pose;
    pose.keypoints.assign(kKeypointCount, Keypoint{});
    const std::size_t batch =
        std::min<std::size_t>(kKeypointCount, points.size() - consumed);
    for (std::size_t i = 0; i < batch; ++i) {
      pose.keypoints[i] = {points[consumed + i].first,
                           points[consumed + i].second, 2};
    }
    const FullBodyPose decoded = decode(encode(pose, params), params);
    for (std::size_t i = 0; i < batch; ++i) {
      const double err =
          std::hypot(decoded.keypoints[i].x - pose.keypoints[i].x,
                     decoded.keypoints[i].y - pose.keypoints[i].y);
      worst = std::max(worst, err);
    }
    consumed += batch;
  }
  std::ostringstream os;
  os << points.size() << " grid points, max round-trip error = " << worst
     << " px";
  detail = os.str();
  return worst <= 2.0;
}

// ---------------------------------------------------------------------------
// Criterion 7: NMS invariants over 200 random pose clouds, and agreement
// with the O(n^2) reference on all of them.
bool nms_properties(std::string& detail) {
  std::mt19937 rng(20260809);
  const NmsParams params;
  int failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto poses = testkit::random_pose_cloud(rng);
    for (std::size_t i = 0; i < poses.size(); ++i) {
      poses[i].person_id = static_cast<std::int64_t>(i);
    }
    const auto kept = run_nms(poses, params);
    const auto expected = testkit::naive_nms_indices(poses, params);
    bool ok = kept.size() == expected.size();
    for (std::size_t i = 0; ok && i < kept.size(); ++i) {
      ok = kept[i].person_id == static_cast<std::int64_t>(expected[i]);
    }

    // Idempotence.
    const auto again = run_nms(kept, params);
    ok = ok && again.size() == kept.size();
    for (std::size_t i = 0; ok && i < kept.size(); ++i) {
      ok = again[i].person_id == kept[i].person_id;
    }

    // Top-score retention.
    if (!poses.empty()) {
      std::size_t top = 0;
      for (std::size_t i = 1; i < poses.size(); ++i) {
        if (poses[i].score > poses[top].score) top = i;
      }
      bool found = false;
      for (const auto& pose : kept) {
        found = found || pose.person_id == static_cast<std::int64_t>(top);
      }
      ok = ok && found;
    }

    // Translation invariance of the retained set.
    auto shifted = poses;
    for (auto& pose : shifted) {
      for (auto& k : pose.keypoints) {
        if (k.v > 0) {
          k.x += 123.25;
          k.y -= 48.5;
        }
      }
    }
    const auto kept_shifted = run_nms(shifted, params);
    ok = ok && kept_shifted.size() == kept.size();
    for (std::size_t i = 0; ok && i < kept.size(); ++i) {
      ok = kept_shifted[i].person_id == kept[i].person_id;
    }

    if (!ok) ++failures;
  }
  std::ostringstream os;
  os << "200 clouds, " << failures << " failures";
  detail = os.str();
  return failures == 0;
}

// ---------------------------------------------------------------------------
// Criterion 8: translation/scale equivariance of the box proposals over
// 1000 random keypoint sets, pre-clipping, tolerance 1e-9.
bool proposal_equivariance(std::string& detail) {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> coord(100.0, 700.0);
  std::uniform_real_distribution<double> shift(-200.0, 200.0);
  std::uniform_real_distribution<double> scale_dist(0.5, 3.0);
  double worst = 0.0;
  auto track = [&](const Box& got, const Box& want) {
    worst = std::max({worst, std::abs(got.x - want.x), std::abs(got.y - want.y),
                      std::abs(got.w - want.w), std::abs(got.h - want.h)});
  };
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Keypoint> body(17);
    // Head keypoints spread at least ~40 px so the side floor never binds
    // at the smallest scale.
    const double hx = coord(rng), hy = coord(rng);
    body[body::kNose] = {hx, hy, 2};
    body[body::kLeftEye] = {hx - 25.0 - 10.0 * std::generate_canonical<double, 53>(rng), hy - 10.0, 2};
    body[body::kRightEye] = {hx + 25.0, hy - 10.0, 1};
    body[body::kLeftEar] = {hx - 40.0, hy + 5.0, 2};
    body[body::kRightEar] = {hx + 40.0 + 20.0 * std::generate_canonical<double, 53>(rng), hy + 5.0, 2};
    // Forearms at least 40 px long.
    for (const auto& [wrist, elbow] :
         {std::pair{body::kLeftWrist, body::kLeftElbow},
          std::pair{body::kRightWrist, body::kRightElbow}}) {
      const double wx = coord(rng), wy = coord(rng);
      const double angle = std::generate_canonical<double, 53>(rng) * 6.28318;
      const double len = 40.0 + 160.0 * std::generate_canonical<double, 53>(rng);
      body[wrist] = {wx, wy, 2};
      body[elbow] = {wx + len * std::cos(angle), wy + len * std::sin(angle), 2};
    }

    const double tx = shift(rng), ty = shift(rng), s = scale_dist(rng);
    std::vector<Keypoint> translated = body, scaled = body;
    for (int i = 0; i < 17; ++i) {
      if (body[i].v > 0) {
        translated[i].x += tx;
        translated[i].y += ty;
        scaled[i].x *= s;
        scaled[i].y *= s;
      }
    }

    const Box face = *face_box(body);
    track(*face_box(translated), {face.x + tx, face.y + ty, face.w, face.h});
    track(*face_box(scaled), {face.x * s, face.y * s, face.w * s, face.h * s});
    const auto hands = hand_boxes(body);
    const auto hands_t = hand_boxes(translated);
    const auto hands_s = hand_boxes(scaled);
    for (int side = 0; side < 2; ++side) {
      const Box hand = side == 0 ? *hands.first : *hands.second;
      const Box ht = side == 0 ? *hands_t.first : *hands_t.second;
      const Box hs = side == 0 ? *hands_s.first : *hands_s.second;
      track(ht, {hand.x + tx, hand.y + ty, hand.w, hand.h});
      track(hs, {hand.x * s, hand.y * s, hand.w * s, hand.h * s});
    }
  }
  std::ostringstream os;
  os << "1000 keypoint sets, max deviation = " << worst;
  detail = os.str();
  return worst <= 1e-9;
}

// ---------------------------------------------------------------------------
// Criterion 9: every malformed-fixture class raises its designated error.
bool parser_rejections(std::string& detail) {
  struct Case {
    const char* fixture;
    ErrorCode expected;
    bool detections;
    DetectionCategory category;
  };
  const Case cases[] = {
      {"gt_bad_kplen.json", ErrorCode::kWrongKeypointCount, false, {}},
      {"gt_bad_vis.json", ErrorCode::kBadVisibility, false, {}},
      {"gt_dangling.json", ErrorCode::kDanglingImageRef, false, {}},
      {"gt_bad_width.json", ErrorCode::kInvalidField, false, {}},
      {"det_bad_score.json", ErrorCode::kBadScore, true,
       DetectionCategory::LeftHand},
      {"det_bad_score_inf.json", ErrorCode::kBadScore, true,
       DetectionCategory::LeftHand},
  };
  int passed = 0;
  for (const Case& c : cases) {
    bool ok = false;
    try {
      const std::string bytes = read_file(fixture_path(c.fixture));
      if (c.detections) {
        parse_detections(bytes, c.category);
      } else {
        parse_ground_truth(bytes);
      }
    } catch (const Error& e) {
      ok = e.code() == c.expected;
    }
    if (ok) ++passed;
  }
  // And the malformed-JSON class itself.
  bool malformed_ok = false;
  try {
    parse_ground_truth("{not json");
  } catch (const Error& e) {
    malformed_ok = e.code() == ErrorCode::kMalformedJson;
  }
  if (malformed_ok) ++passed;
  std::ostringstream os;
  os << passed << "/7 rejection classes produce their designated error";
  detail = os.str();
  return passed == 7;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"evaluator-oracle-equivalence", evaluator_oracle_equivalence},
      {"perfect-prediction-identity", perfect_prediction_identity},
      {"oks-analytic-point", oks_analytic_point},
      {"scale-invariance", scale_invariance},
      {"merge-closure", merge_closure},
      {"heatmap-round-trip", heatmap_round_trip},
      {"nms-properties", nms_properties},
      {"proposal-equivariance", proposal_equivariance},
      {"parser-rejection-suite", parser_rejections},
  };

  bool all_passed = true;
  for (const Criterion& criterion : criteria) {
    std::string display;
    bool ok = false;
    try {
      ok = criterion.run(display);
    } catch (const std::exception& e) {
      display = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %s (%s)\n", ok ? "PASS" : "FAIL", criterion.name,
                display.c_str());
    all_passed = all_passed && ok;
  }
  return all_passed ? 0 : 1;
}
