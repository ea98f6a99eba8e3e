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

#include "wholebody/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "wholebody/errors.hpp"
#include "wholebody/parallel.hpp"

namespace wholebody {

namespace {

constexpr int kThresholdCount = 10;   // 0.50 : 0.05 : 0.95
constexpr int kRecallPoints = 101;    // 0.00 : 0.01 : 1.00
constexpr int kAreaClassCount = 3;    // all, medium, large

double threshold_at(int t) { return 0.50 + 0.05 * t; }

int labeled_in_range(const PersonAnnotation& gt, int lo, int hi) {
  const int end = std::min<int>(hi, static_cast<int>(gt.keypoints.size()));
  int count = 0;
  for (int i = lo; i < end; ++i) {
    if (is_labeled(gt.keypoints[i])) ++count;
  }
  return count;
}

double oks_range(std::span<const ScoredKeypoint> det, const PersonAnnotation& gt,
                 const SigmaTable& sigmas, int lo, int hi) {
  const int end = std::min<int>(hi, static_cast<int>(gt.keypoints.size()));
  int count = 0;
  double sum = 0.0;
  for (int i = lo; i < end; ++i) {
    const Keypoint& g = gt.keypoints[i];
    if (!is_labeled(g)) continue;
    ++count;
    if (i >= static_cast<int>(det.size())) continue;  // no prediction: term 0
    const double dx = det[i].x - g.x;
    const double dy = det[i].y - g.y;
    const double k = 2.0 * sigmas[i];
    sum += std::exp(-(dx * dx + dy * dy) / (2.0 * gt.area * k * k));
  }
  if (count == 0 || !(gt.area > 0.0)) return 0.0;
  return sum / count;
}

// Greedy matcher shared by match_image and the PR pipeline. Detections are
// given in processing order; gt_order lists gt indices counted-first.
// Returns, per detection, the matched gt index or -1.
std::vector<int> greedy_match(const std::vector<std::vector<double>>& oks_matrix,
                              const std::vector<int>& gt_order,
                              const std::vector<bool>& gt_ignored,
                              double threshold) {
  const std::size_t n_det = oks_matrix.size();
  std::vector<int> det_match(n_det, -1);
  std::vector<bool> gt_taken(gt_ignored.size(), false);
  for (std::size_t d = 0; d < n_det; ++d) {
    int best = -1;
    double best_oks = 0.0;
    for (int g : gt_order) {
      if (gt_taken[g]) continue;
      // Never trade a counted match for an ignored one.
      if (best >= 0 && !gt_ignored[best] && gt_ignored[g]) break;
      const double o = oks_matrix[d][g];
      if (o < threshold) continue;
      if (best < 0 || o > best_oks) {
        best = g;
        best_oks = o;
      }
    }
    if (best >= 0) {
      gt_taken[best] = true;
      det_match[d] = best;
    }
  }
  return det_match;
}

struct DetOutcome {
  double score = 0.0;
  bool tp = false;       // matched a counted gt
  bool ignored = false;  // matched an ignored gt
};

// Everything the accumulator needs from one image: detection outcomes per
// (area class, threshold) and counted-gt totals per class.
struct ImageEval {
  // [class][threshold][detection in processing order]
  std::array<std::array<std::vector<DetOutcome>, kThresholdCount>,
             kAreaClassCount>
      outcomes;
  std::array<long long, kAreaClassCount> counted_gt{};
};

struct AreaClassifier {
  double medium_min;
  double medium_max;

  bool in_class(int cls, double area) const {
    switch (cls) {
      case 0:
        return area > 0.0;
      case 1:
        return area > medium_min && area < medium_max;
      default:
        return area > medium_max;
    }
  }
};

ImageEval evaluate_image(std::span<const PersonAnnotation> gts,
                         std::span<const DetectionRecord* const> dets,
                         const SigmaTable& sigmas, const EvalParams& params,
                         int lo, int hi) {
  ImageEval result;
  const AreaClassifier areas{params.area_medium_min, params.area_medium_max};

  std::vector<std::vector<double>> oks_matrix(
      dets.size(), std::vector<double>(gts.size(), 0.0));
  for (std::size_t d = 0; d < dets.size(); ++d) {
    for (std::size_t g = 0; g < gts.size(); ++g) {
      oks_matrix[d][g] = oks_range(dets[d]->keypoints, gts[g], sigmas, lo, hi);
    }
  }
  std::vector<int> labeled(gts.size());
  for (std::size_t g = 0; g < gts.size(); ++g) {
    labeled[g] = labeled_in_range(gts[g], lo, hi);
  }

  for (int cls = 0; cls < kAreaClassCount; ++cls) {
    std::vector<bool> ignored(gts.size());
    long long counted = 0;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      ignored[g] = labeled[g] == 0 || !areas.in_class(cls, gts[g].area);
      if (!ignored[g]) ++counted;
    }
    result.counted_gt[cls] = counted;

    std::vector<int> gt_order;
    gt_order.reserve(gts.size());
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (!ignored[g]) gt_order.push_back(static_cast<int>(g));
    }
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (ignored[g]) gt_order.push_back(static_cast<int>(g));
    }

    for (int t = 0; t < kThresholdCount; ++t) {
      const std::vector<int> det_match =
          greedy_match(oks_matrix, gt_order, ignored, threshold_at(t));
      std::vector<DetOutcome>& out = result.outcomes[cls][t];
      out.resize(dets.size());
      for (std::size_t d = 0; d < dets.size(); ++d) {
        out[d].score = dets[d]->score;
        if (det_match[d] >= 0) {
          if (ignored[det_match[d]]) {
            out[d].ignored = true;
          } else {
            out[d].tp = true;
          }
        }
      }
    }
  }
  return result;
}

struct PrSummary {
  double ap = EvalReport::kUndefined;
  double recall = EvalReport::kUndefined;
};

PrSummary accumulate_class_threshold(
    const std::vector<const ImageEval*>& images, int cls, int t) {
  long long npig = 0;
  for (const ImageEval* img : images) npig += img->counted_gt[cls];
  if (npig == 0) return {};

  // Global score order; stable sort keeps image order, then per-image
  // processing order, as the tie-break.
  std::vector<DetOutcome> all;
  for (const ImageEval* img : images) {
    const std::vector<DetOutcome>& v = img->outcomes[cls][t];
    all.insert(all.end(), v.begin(), v.end());
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const DetOutcome& a, const DetOutcome& b) {
                     return a.score > b.score;
                   });

  std::vector<double> recall_curve;
  std::vector<double> precision_curve;
  long long tp = 0, fp = 0;
  for (const DetOutcome& o : all) {
    if (o.ignored) continue;
    if (o.tp) {
      ++tp;
    } else {
      ++fp;
    }
    recall_curve.push_back(static_cast<double>(tp) / static_cast<double>(npig));
    precision_curve.push_back(static_cast<double>(tp) /
                              static_cast<double>(tp + fp));
  }

  PrSummary summary;
  summary.recall = recall_curve.empty() ? 0.0 : recall_curve.back();

  // Monotone envelope, then 101-point interpolation.
  for (std::size_t i = precision_curve.size(); i-- > 1;) {
    precision_curve[i - 1] = std::max(precision_curve[i - 1], precision_curve[i]);
  }
  double ap_sum = 0.0;
  for (int r = 0; r < kRecallPoints; ++r) {
    const double target = r / 100.0;
    const auto it = std::lower_bound(recall_curve.begin(), recall_curve.end(),
                                     target);
    if (it != recall_curve.end()) {
      ap_sum += precision_curve[it - recall_curve.begin()];
    }
  }
  summary.ap = ap_sum / kRecallPoints;
  return summary;
}

EvalReport evaluate_range(const AnnotationSet& gt, const DetectionSet& results,
                          const SigmaTable& sigmas, const EvalParams& params,
                          int lo, int hi) {
  std::unordered_map<std::int64_t, std::size_t> image_pos;
  for (std::size_t i = 0; i < gt.images.size(); ++i) {
    image_pos.emplace(gt.images[i].id, i);
  }
  for (const DetectionRecord& rec : results.records) {
    if (image_pos.find(rec.image_id) == image_pos.end()) {
      throw Error(ErrorCode::kDanglingImageRef,
                  "result references unknown image " +
                      std::to_string(rec.image_id));
    }
  }

  std::vector<std::vector<const PersonAnnotation*>> gts_by_image(gt.images.size());
  for (const PersonAnnotation& ann : gt.annotations) {
    gts_by_image[image_pos.at(ann.image_id)].push_back(&ann);
  }
  std::vector<std::vector<const DetectionRecord*>> dets_by_image(gt.images.size());
  for (const DetectionRecord& rec : results.records) {
    dets_by_image[image_pos.at(rec.image_id)].push_back(&rec);
  }
  // Processing order within an image: score descending, id ascending; then
  // the per-image cap.
  for (auto& dets : dets_by_image) {
    std::sort(dets.begin(), dets.end(),
              [](const DetectionRecord* a, const DetectionRecord* b) {
                if (a->score != b->score) return a->score > b->score;
                return a->id < b->id;
              });
    if (dets.size() > static_cast<std::size_t>(params.max_detections)) {
      dets.resize(params.max_detections);
    }
  }

  std::vector<ImageEval> evals(gt.images.size());
  parallel_for(gt.images.size(), [&](std::size_t i) {
    std::vector<PersonAnnotation> gts;
    gts.reserve(gts_by_image[i].size());
    for (const PersonAnnotation* p : gts_by_image[i]) gts.push_back(*p);
    evals[i] = evaluate_image(gts, dets_by_image[i], sigmas, params, lo, hi);
  });

  std::vector<const ImageEval*> images;
  images.reserve(evals.size());
  for (const ImageEval& e : evals) images.push_back(&e);

  std::array<std::array<PrSummary, kThresholdCount>, kAreaClassCount> table;
  for (int cls = 0; cls < kAreaClassCount; ++cls) {
    for (int t = 0; t < kThresholdCount; ++t) {
      table[cls][t] = accumulate_class_threshold(images, cls, t);
    }
  }

  auto mean_over_thresholds = [&](int cls, bool recall) {
    double sum = 0.0;
    for (int t = 0; t < kThresholdCount; ++t) {
      const PrSummary& s = table[cls][t];
      if (s.ap == EvalReport::kUndefined) return EvalReport::kUndefined;
      sum += recall ? s.recall : s.ap;
    }
    return sum / kThresholdCount;
  };
  auto at_threshold = [&](int cls, int t, bool recall) {
    const PrSummary& s = table[cls][t];
    if (s.ap == EvalReport::kUndefined) return EvalReport::kUndefined;
    return recall ? s.recall : s.ap;
  };

  EvalReport report;
  report.map = mean_over_thresholds(0, false);
  report.ap50 = at_threshold(0, 0, false);
  report.ap75 = at_threshold(0, 5, false);
  report.ap_medium = mean_over_thresholds(1, false);
  report.ap_large = mean_over_thresholds(2, false);
  report.mar = mean_over_thresholds(0, true);
  report.ar50 = at_threshold(0, 0, true);
  report.ar75 = at_threshold(0, 5, true);
  report.ar_medium = mean_over_thresholds(1, true);
  report.ar_large = mean_over_thresholds(2, true);
  return report;
}

}  // namespace

double oks(std::span<const ScoredKeypoint> det_keypoints,
           const PersonAnnotation& gt, const SigmaTable& sigmas) {
  return oks_range(det_keypoints, gt, sigmas, 0, kKeypointCount);
}

double oks(const FullBodyPose& det, const PersonAnnotation& gt,
           const SigmaTable& sigmas) {
  std::vector<ScoredKeypoint> kps;
  kps.reserve(det.keypoints.size());
  for (const Keypoint& k : det.keypoints) kps.push_back({k.x, k.y, 1.0});
  return oks(kps, gt, sigmas);
}

MatchResult match_image(std::span<const FullBodyPose> dets,
                        std::span<const PersonAnnotation> gts, double threshold,
                        const SigmaTable& sigmas) {
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return dets[a].score > dets[b].score;
                   });

  std::vector<std::vector<double>> oks_matrix(
      dets.size(), std::vector<double>(gts.size(), 0.0));
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    for (std::size_t g = 0; g < gts.size(); ++g) {
      oks_matrix[rank][g] = oks(dets[order[rank]], gts[g], sigmas);
    }
  }
  std::vector<int> gt_order(gts.size());
  std::iota(gt_order.begin(), gt_order.end(), 0);
  std::vector<bool> ignored(gts.size(), false);
  const std::vector<int> det_match =
      greedy_match(oks_matrix, gt_order, ignored, threshold);

  MatchResult result;
  result.detections.resize(dets.size());
  result.gt_matched.assign(gts.size(), false);
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    DetectionMatch& m = result.detections[order[rank]];
    if (det_match[rank] >= 0) {
      m.gt_id = gts[det_match[rank]].id;
      m.oks = oks_matrix[rank][det_match[rank]];
      result.gt_matched[det_match[rank]] = true;
    }
  }
  return result;
}

EvalReport evaluate(const AnnotationSet& gt, const DetectionSet& results,
                    const SigmaTable& sigmas, const EvalParams& params) {
  return evaluate_range(gt, results, sigmas, params, 0, kKeypointCount);
}

EvalReport evaluate_part(const AnnotationSet& gt, const DetectionSet& results,
                         PartKind kind, const SigmaTable& sigmas,
                         const EvalParams& params) {
  const IndexRange r = part_range(kind);
  return evaluate_range(gt, results, sigmas, params, r.begin, r.end);
}

std::vector<std::pair<PartKind, EvalReport>> per_part_report(
    const AnnotationSet& gt, const DetectionSet& results,
    const SigmaTable& sigmas, const EvalParams& params) {
  std::vector<std::pair<PartKind, EvalReport>> reports;
  reports.reserve(kAllParts.size());
  for (PartKind kind : kAllParts) {
    reports.emplace_back(kind, evaluate_part(gt, results, kind, sigmas, params));
  }
  return reports;
}

namespace {

constexpr const char* kMetricNames[] = {"mAP", "AP50", "AP75", "APM", "APL",
                                        "mAR", "AR50", "AR75", "ARM", "ARL"};

std::array<double, 10> metric_values(const EvalReport& r) {
  return {r.map, r.ap50, r.ap75, r.ap_medium, r.ap_large,
          r.mar, r.ar50, r.ar75, r.ar_medium, r.ar_large};
}

}  // namespace

std::string format_reports_table(const ReportRows& rows) {
  std::size_t label_width = 8;
  for (const auto& [label, _] : rows) label_width = std::max(label_width, label.size());
  std::string out(label_width, ' ');
  char buf[32];
  for (const char* name : kMetricNames) {
    std::snprintf(buf, sizeof(buf), "  %6s", name);
    out += buf;
  }
  out += '\n';
  for (const auto& [label, report] : rows) {
    out += label;
    out.append(label_width - label.size(), ' ');
    for (double v : metric_values(report)) {
      if (v == EvalReport::kUndefined) {
        out += "       —";
      } else {
        std::snprintf(buf, sizeof(buf), "  %6.3f", v);
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

std::string format_reports_json(const ReportRows& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [label, report] : rows) {
    nlohmann::json j;
    j["label"] = label;
    const auto values = metric_values(report);
    for (std::size_t i = 0; i < values.size(); ++i) {
      j[kMetricNames[i]] = values[i];
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string format_reports_csv(const ReportRows& rows) {
  std::string out = "label";
  for (const char* name : kMetricNames) {
    out += ',';
    out += name;
  }
  out += '\n';
  char buf[64];
  for (const auto& [label, report] : rows) {
    out += label;
    for (double v : metric_values(report)) {
      std::snprintf(buf, sizeof(buf), ",%.12g", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace wholebody
