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

#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wholebody/config.hpp"
#include "wholebody/coco_io.hpp"
#include "wholebody/eval.hpp"
#include "wholebody/merge.hpp"
#include "wholebody/pose_nms.hpp"
#include "wholebody/proposal.hpp"
#include "wholebody/render.hpp"
#include "wholebody/stats.hpp"

namespace {

using nlohmann::json;
using namespace wholebody;

// 0 success, 1 usage, 2 validation failure, 3 I/O.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

void emit_diagnostic(const std::string& code, const std::string& message) {
  json j;
  j["error"] = {{"code", code}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

json box_json(const std::optional<Box>& box) {
  if (!box) return nullptr;
  return json::array({box->x, box->y, box->w, box->h});
}

void emit_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
  } else {
    write_file(path, data);
  }
}

int cmd_propose(const ToolConfig& cfg, const std::string& gt_path,
                const std::string& out_path, bool clip) {
  const AnnotationSet set = parse_ground_truth(read_file(gt_path));
  json out = json::array();
  for (const PersonAnnotation& ann : set.annotations) {
    std::span<const Keypoint> body(
        ann.keypoints.data(), std::min<std::size_t>(ann.keypoints.size(), 17));
    auto face = face_box(body, cfg.proposal.face);
    auto hands = hand_boxes(body, cfg.proposal.hand);
    if (clip) {
      const ImageRecord* image = set.find_image(ann.image_id);
      auto clip_one = [&](std::optional<Box>& b) {
        if (b && image) b = clip_to_image(*b, *image);
      };
      clip_one(face);
      clip_one(hands.first);
      clip_one(hands.second);
    }
    json entry;
    entry["image_id"] = ann.image_id;
    entry["person_id"] = ann.id;
    entry["face"] = box_json(face);
    entry["left_hand"] = box_json(hands.first);
    entry["right_hand"] = box_json(hands.second);
    out.push_back(std::move(entry));
  }
  emit_output(out_path, out.dump(2) + "\n");
  return kExitOk;
}

int cmd_merge(const ToolConfig& cfg, const std::string& gt_path,
              const std::string& foot_path, const std::string& face_path,
              const std::string& lhand_path, const std::string& rhand_path,
              const std::string& out_path) {
  const AnnotationSet gt = parse_ground_truth(read_file(gt_path));
  std::optional<DetectionSet> foot, face, lhand, rhand;
  if (!foot_path.empty()) {
    foot = parse_detections(read_file(foot_path), DetectionCategory::Foot);
  }
  if (!face_path.empty()) {
    face = parse_detections(read_file(face_path), DetectionCategory::Face);
  }
  if (!lhand_path.empty()) {
    lhand = parse_detections(read_file(lhand_path), DetectionCategory::LeftHand);
  }
  if (!rhand_path.empty()) {
    rhand = parse_detections(read_file(rhand_path), DetectionCategory::RightHand);
  }
  const AnnotationSet merged =
      merge_dataset(gt, foot ? &*foot : nullptr, face ? &*face : nullptr,
                    lhand ? &*lhand : nullptr, rhand ? &*rhand : nullptr,
                    cfg.merge);
  emit_output(out_path, write_annotations(merged));
  return kExitOk;
}

int cmd_nms(const ToolConfig& cfg, const std::string& in_path,
            const std::string& out_path) {
  const DetectionSet input =
      parse_detections(read_file(in_path), DetectionCategory::WholeBody);
  // Records are sorted by image; keypoints with non-positive confidence are
  // treated as unlabeled for the distance computation.
  DetectionSet kept;
  kept.category = DetectionCategory::WholeBody;
  std::size_t begin = 0;
  while (begin < input.records.size()) {
    std::size_t end = begin;
    while (end < input.records.size() &&
           input.records[end].image_id == input.records[begin].image_id) {
      ++end;
    }
    std::vector<FullBodyPose> poses;
    poses.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      const DetectionRecord& rec = input.records[i];
      FullBodyPose pose;
      pose.image_id = rec.image_id;
      pose.person_id = static_cast<std::int64_t>(i);  // index into records
      pose.score = rec.score;
      pose.keypoints.reserve(rec.keypoints.size());
      for (const ScoredKeypoint& k : rec.keypoints) {
        pose.keypoints.push_back({k.x, k.y, k.c > 0.0 ? 1 : 0});
      }
      poses.push_back(std::move(pose));
    }
    for (const FullBodyPose& pose : run_nms(std::move(poses), cfg.nms)) {
      kept.records.push_back(input.records[pose.person_id]);
    }
    begin = end;
  }
  emit_output(out_path, write_detections(kept));
  return kExitOk;
}

int cmd_evaluate(const ToolConfig& cfg, const std::string& gt_path,
                 const std::string& results_path, bool per_part,
                 const std::string& format, const std::string& out_path) {
  const AnnotationSet gt = parse_ground_truth(read_file(gt_path));
  const DetectionSet results =
      parse_detections(read_file(results_path), DetectionCategory::WholeBody);
  ReportRows rows;
  rows.emplace_back("overall", evaluate(gt, results, cfg.sigmas, cfg.eval));
  if (per_part) {
    for (const auto& [kind, report] :
         per_part_report(gt, results, cfg.sigmas, cfg.eval)) {
      rows.emplace_back(part_name(kind), report);
    }
  }
  std::string text;
  if (format == "table") {
    text = format_reports_table(rows);
  } else if (format == "json") {
    text = format_reports_json(rows);
  } else {
    text = format_reports_csv(rows);
  }
  emit_output(out_path, text);
  return kExitOk;
}

int cmd_validate(const std::string& in_path, const std::string& format) {
  const ValidationReport report = validate_file(in_path);
  if (format == "json") {
    json j;
    j["errors"] = json::array();
    j["warnings"] = json::array();
    for (const Violation& v : report.errors) {
      j["errors"].push_back({{"code", error_code_name(v.code)},
                             {"message", v.message}});
    }
    for (const Violation& v : report.warnings) {
      j["warnings"].push_back({{"code", error_code_name(v.code)},
                               {"message", v.message}});
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (const Violation& v : report.errors) {
      std::cout << "error   [" << error_code_name(v.code) << "] " << v.message
                << "\n";
    }
    for (const Violation& v : report.warnings) {
      std::cout << "warning [" << error_code_name(v.code) << "] " << v.message
                << "\n";
    }
    std::cout << report.errors.size() << " errors, " << report.warnings.size()
              << " warnings\n";
  }
  if (!report.clean()) {
    emit_diagnostic("ValidationFailed", in_path + " has " +
                                            std::to_string(report.errors.size()) +
                                            " validation errors");
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_stats(const std::string& in_path, const std::string& format) {
  const AnnotationSet set = parse_ground_truth(read_file(in_path));
  const DatasetStats stats = compute_stats(set);
  std::cout << (format == "json" ? format_stats_json(stats)
                                 : format_stats_table(stats));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Construction and evaluation of whole-body (133-keypoint) pose "
      "annotations"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file with parameter defaults (docs/formats.md)");

  ToolConfig cfg;
  std::function<int()> action;

  // propose
  auto* propose = app.add_subcommand(
      "propose", "Derive face/hand box proposals from body keypoints");
  std::string propose_gt, propose_out;
  bool propose_no_clip = false;
  propose->add_option("--gt", propose_gt, "ground-truth annotation file")
      ->required();
  propose->add_option("-o,--out", propose_out, "output JSON file (- = stdout)");
  propose->add_flag("--no-clip", propose_no_clip,
                    "keep boxes that extend beyond the image frame");
  auto* p_face_exp = propose->add_option("--face-expansion",
                                         cfg.proposal.face.expansion);
  auto* p_face_min = propose->add_option("--face-min-side",
                                         cfg.proposal.face.min_side);
  auto* p_hand_alpha = propose->add_option("--hand-alpha", cfg.proposal.hand.alpha);
  auto* p_hand_gamma = propose->add_option("--hand-gamma", cfg.proposal.hand.gamma);
  auto* p_hand_min = propose->add_option("--hand-min-side",
                                         cfg.proposal.hand.min_side);
  propose->callback([&] {
    action = [&] {
      return cmd_propose(cfg, propose_gt, propose_out, !propose_no_clip);
    };
  });

  // merge
  auto* merge = app.add_subcommand(
      "merge", "Fuse body ground truth with per-part detector outputs");
  std::string merge_gt, merge_foot, merge_face, merge_lhand, merge_rhand,
      merge_out;
  merge->add_option("--gt", merge_gt, "body ground-truth file")->required();
  merge->add_option("--foot", merge_foot, "foot detection results");
  merge->add_option("--face", merge_face, "face detection results");
  merge->add_option("--lhand", merge_lhand, "left-hand detection results");
  merge->add_option("--rhand", merge_rhand, "right-hand detection results");
  merge->add_option("-o,--out", merge_out, "output annotation file")->required();
  auto* m_iou = merge->add_option("--iou-threshold", cfg.merge.iou_threshold);
  auto* m_floor = merge->add_option("--kp-floor",
                                    cfg.merge.keypoint_score_floor,
                                    "keypoint confidence floor");
  merge->callback([&] {
    action = [&] {
      return cmd_merge(cfg, merge_gt, merge_foot, merge_face, merge_lhand,
                       merge_rhand, merge_out);
    };
  });

  // nms
  auto* nms = app.add_subcommand(
      "nms", "Eliminate redundant whole-body pose detections");
  std::string nms_in, nms_out;
  nms->add_option("--in", nms_in, "whole-body results file")->required();
  nms->add_option("--out", nms_out, "output results file")->required();
  auto* n_eta = nms->add_option("--eta", cfg.nms.eta);
  auto* n_lambda = nms->add_option("--lambda", cfg.nms.lambda);
  auto* n_sigma = nms->add_option("--sigma-soft", cfg.nms.sigma_soft);
  auto* n_floor = nms->add_option("--score-floor", cfg.nms.score_floor);
  nms->callback([&] {
    action = [&] { return cmd_nms(cfg, nms_in, nms_out); };
  });

  // evaluate
  auto* eval_cmd = app.add_subcommand(
      "evaluate", "Keypoint-similarity AP/AR of whole-body results");
  std::string eval_gt, eval_results, eval_sigmas, eval_out;
  std::string eval_format = "table";
  bool eval_per_part = false;
  eval_cmd->add_option("--gt", eval_gt, "ground-truth file")->required();
  eval_cmd->add_option("--results", eval_results, "whole-body results file")
      ->required();
  eval_cmd->add_flag("--per-part", eval_per_part, "also report per part");
  eval_cmd->add_option("--sigmas", eval_sigmas, "sigma table JSON file");
  eval_cmd->add_option("--format", eval_format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  eval_cmd->add_option("-o,--out", eval_out, "output file (- = stdout)");
  auto* e_maxdets = eval_cmd->add_option("--max-dets",
                                         cfg.eval.max_detections,
                                         "per-image detection cap");
  eval_cmd->callback([&] {
    action = [&] {
      if (!eval_sigmas.empty()) cfg.sigmas = load_sigmas(eval_sigmas);
      return cmd_evaluate(cfg, eval_gt, eval_results, eval_per_part,
                          eval_format, eval_out);
    };
  });

  // validate
  auto* validate = app.add_subcommand(
      "validate", "Check an annotation file against the format rules");
  std::string validate_in;
  std::string validate_format = "text";
  validate->add_option("input", validate_in, "annotation file")->required();
  validate->add_option("--format", validate_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  validate->callback([&] {
    action = [&] { return cmd_validate(validate_in, validate_format); };
  });

  // stats
  auto* stats = app.add_subcommand(
      "stats", "Summarize an annotation file");
  std::string stats_in;
  std::string stats_format = "table";
  stats->add_option("--in", stats_in, "annotation file")->required();
  stats->add_option("--format", stats_format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  stats->callback([&] {
    action = [&] { return cmd_stats(stats_in, stats_format); };
  });

  // render
  auto* render_cmd = app.add_subcommand(
      "render", "Draw the skeletons of one image as an SVG");
  RenderSpec spec;
  render_cmd->add_option("--in", spec.annotation_path, "annotation file")
      ->required();
  render_cmd->add_option("--image-id", spec.image_id)->required();
  render_cmd->add_option("-o,--out", spec.output_path, "output SVG file")
      ->required();
  render_cmd->add_option("--marker-radius", spec.style.marker_radius);
  render_cmd->add_option("--stroke-width", spec.style.stroke_width);
  render_cmd->add_option("--color-body", spec.style.part_colors[0]);
  render_cmd->add_option("--color-foot", spec.style.part_colors[1]);
  render_cmd->add_option("--color-face", spec.style.part_colors[2]);
  render_cmd->add_option("--color-lhand", spec.style.part_colors[3]);
  render_cmd->add_option("--color-rhand", spec.style.part_colors[4]);
  render_cmd->callback([&] {
    action = [&] {
      render(spec);
      return kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_diagnostic("Usage", e.what());
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      const ToolConfig loaded = load_config(config_path);
      // Flags the user passed keep their values; everything else follows
      // the config file.
      ToolConfig merged = loaded;
      if (*p_face_exp) merged.proposal.face.expansion = cfg.proposal.face.expansion;
      if (*p_face_min) merged.proposal.face.min_side = cfg.proposal.face.min_side;
      if (*p_hand_alpha) merged.proposal.hand.alpha = cfg.proposal.hand.alpha;
      if (*p_hand_gamma) merged.proposal.hand.gamma = cfg.proposal.hand.gamma;
      if (*p_hand_min) merged.proposal.hand.min_side = cfg.proposal.hand.min_side;
      if (*m_iou) merged.merge.iou_threshold = cfg.merge.iou_threshold;
      if (*m_floor) merged.merge.keypoint_score_floor = cfg.merge.keypoint_score_floor;
      if (*n_eta) merged.nms.eta = cfg.nms.eta;
      if (*n_lambda) merged.nms.lambda = cfg.nms.lambda;
      if (*n_sigma) merged.nms.sigma_soft = cfg.nms.sigma_soft;
      if (*n_floor) merged.nms.score_floor = cfg.nms.score_floor;
      if (*e_maxdets) merged.eval.max_detections = cfg.eval.max_detections;
      merged.merge.proposal = merged.proposal;
      cfg = merged;
    } else {
      cfg.merge.proposal = cfg.proposal;
    }
    return action();
  } catch (const Error& e) {
    emit_diagnostic(e.code_name(), e.what());
    return e.code() == ErrorCode::kIo ? kExitIo : kExitValidation;
  } catch (const std::exception& e) {
    emit_diagnostic("Internal", e.what());
    return kExitValidation;
  }
}
