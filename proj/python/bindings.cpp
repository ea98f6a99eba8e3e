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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wholebody/config.hpp"
#include "wholebody/coco_io.hpp"
#include "wholebody/eval.hpp"
#include "wholebody/heatmap.hpp"
#include "wholebody/merge.hpp"
#include "wholebody/pose_nms.hpp"
#include "wholebody/proposal.hpp"
#include "wholebody/render.hpp"
#include "wholebody/schema.hpp"
#include "wholebody/stats.hpp"

namespace py = pybind11;
using namespace wholebody;

namespace {

const DetectionRecord* opt_ptr(const std::optional<DetectionRecord>& r) {
  return r ? &*r : nullptr;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Whole-body (133-keypoint) pose annotation and evaluation tools";

  py::register_exception<Error>(m, "WholebodyError");

  // --- schema ---
  py::enum_<PartKind>(m, "PartKind")
      .value("Body", PartKind::Body)
      .value("Foot", PartKind::Foot)
      .value("Face", PartKind::Face)
      .value("LeftHand", PartKind::LeftHand)
      .value("RightHand", PartKind::RightHand);

  m.def("total_keypoints", &total_keypoints);
  m.def("part_range", [](PartKind kind) {
    const IndexRange r = part_range(kind);
    return py::make_tuple(r.begin, r.end);
  });
  m.def("part_name", &part_name);
  m.def("skeleton", [] {
    std::vector<std::pair<int, int>> edges;
    for (const SkeletonEdge& e : skeleton()) edges.emplace_back(e.a, e.b);
    return edges;
  });
  m.def("keypoint_names", [] { return keypoint_names(); });

  py::class_<SigmaTable>(m, "SigmaTable")
      .def(py::init<>())
      .def(py::init<std::vector<double>>())
      .def("__getitem__", [](const SigmaTable& t, int i) { return t[i]; })
      .def_property_readonly("values", &SigmaTable::values);
  m.def("schema_sidecar_json", &schema_sidecar_json,
        py::arg("sigmas") = SigmaTable());
  m.def("parse_sigmas", &parse_sigmas);
  m.def("load_sigmas", &load_sigmas);

  // --- core types ---
  py::class_<Keypoint>(m, "Keypoint")
      .def(py::init<>())
      .def(py::init([](double x, double y, int v) {
             return Keypoint{x, y, v};
           }),
           py::arg("x"), py::arg("y"), py::arg("v") = 2)
      .def_readwrite("x", &Keypoint::x)
      .def_readwrite("y", &Keypoint::y)
      .def_readwrite("v", &Keypoint::v);

  py::class_<ScoredKeypoint>(m, "ScoredKeypoint")
      .def(py::init<>())
      .def(py::init([](double x, double y, double c) {
             return ScoredKeypoint{x, y, c};
           }),
           py::arg("x"), py::arg("y"), py::arg("c") = 1.0)
      .def_readwrite("x", &ScoredKeypoint::x)
      .def_readwrite("y", &ScoredKeypoint::y)
      .def_readwrite("c", &ScoredKeypoint::c);

  py::class_<Box>(m, "Box")
      .def(py::init<>())
      .def(py::init([](double x, double y, double w, double h) {
             return Box{x, y, w, h};
           }),
           py::arg("x"), py::arg("y"), py::arg("w"), py::arg("h"))
      .def_readwrite("x", &Box::x)
      .def_readwrite("y", &Box::y)
      .def_readwrite("w", &Box::w)
      .def_readwrite("h", &Box::h)
      .def("area", &Box::area);
  m.def("iou", &iou);

  py::class_<FullBodyPose>(m, "FullBodyPose")
      .def(py::init<>())
      .def_readwrite("keypoints", &FullBodyPose::keypoints)
      .def_readwrite("score", &FullBodyPose::score)
      .def_readwrite("person_id", &FullBodyPose::person_id)
      .def_readwrite("image_id", &FullBodyPose::image_id);

  // --- coco_io ---
  py::class_<ImageRecord>(m, "ImageRecord")
      .def(py::init<>())
      .def_readwrite("id", &ImageRecord::id)
      .def_readwrite("width", &ImageRecord::width)
      .def_readwrite("height", &ImageRecord::height)
      .def_readwrite("file_name", &ImageRecord::file_name);

  py::class_<PersonAnnotation>(m, "PersonAnnotation")
      .def(py::init<>())
      .def_readwrite("id", &PersonAnnotation::id)
      .def_readwrite("image_id", &PersonAnnotation::image_id)
      .def_readwrite("category_id", &PersonAnnotation::category_id)
      .def_readwrite("keypoints", &PersonAnnotation::keypoints)
      .def_readwrite("num_keypoints", &PersonAnnotation::num_keypoints)
      .def_readwrite("bbox", &PersonAnnotation::bbox)
      .def_readwrite("area", &PersonAnnotation::area)
      .def_readwrite("iscrowd", &PersonAnnotation::iscrowd)
      .def("labeled_count", &PersonAnnotation::labeled_count);

  py::class_<AnnotationSet>(m, "AnnotationSet")
      .def(py::init<>())
      .def_readwrite("images", &AnnotationSet::images)
      .def_readwrite("annotations", &AnnotationSet::annotations)
      .def("__len__", &AnnotationSet::size);

  py::enum_<DetectionCategory>(m, "DetectionCategory")
      .value("Foot", DetectionCategory::Foot)
      .value("Face", DetectionCategory::Face)
      .value("LeftHand", DetectionCategory::LeftHand)
      .value("RightHand", DetectionCategory::RightHand)
      .value("WholeBody", DetectionCategory::WholeBody);
  m.def("category_keypoint_count", &category_keypoint_count);

  py::class_<DetectionRecord>(m, "DetectionRecord")
      .def(py::init<>())
      .def_readwrite("image_id", &DetectionRecord::image_id)
      .def_readwrite("keypoints", &DetectionRecord::keypoints)
      .def_readwrite("score", &DetectionRecord::score)
      .def_readwrite("id", &DetectionRecord::id);

  py::class_<DetectionSet>(m, "DetectionSet")
      .def(py::init<>())
      .def_readwrite("category", &DetectionSet::category)
      .def_readwrite("records", &DetectionSet::records)
      .def("__len__", &DetectionSet::size);

  m.def("parse_ground_truth",
        [](const std::string& bytes) { return parse_ground_truth(bytes); });
  m.def("parse_detections",
        [](const std::string& bytes, DetectionCategory category) {
          return parse_detections(bytes, category);
        });
  m.def("write_annotations", &write_annotations);
  m.def("write_detections", &write_detections);

  py::class_<Violation>(m, "Violation")
      .def_property_readonly("code",
                             [](const Violation& v) {
                               return std::string(error_code_name(v.code));
                             })
      .def_readonly("message", &Violation::message);
  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("errors", &ValidationReport::errors)
      .def_readonly("warnings", &ValidationReport::warnings)
      .def("clean", &ValidationReport::clean);
  m.def("validate_ground_truth", [](const std::string& bytes) {
    return validate_ground_truth(bytes);
  });
  m.def("validate_file", &validate_file);

  // --- proposal ---
  py::class_<FaceBoxParams>(m, "FaceBoxParams")
      .def(py::init<>())
      .def_readwrite("expansion", &FaceBoxParams::expansion)
      .def_readwrite("min_side", &FaceBoxParams::min_side);
  py::class_<HandBoxParams>(m, "HandBoxParams")
      .def(py::init<>())
      .def_readwrite("alpha", &HandBoxParams::alpha)
      .def_readwrite("gamma", &HandBoxParams::gamma)
      .def_readwrite("min_side", &HandBoxParams::min_side);
  py::class_<ProposalParams>(m, "ProposalParams")
      .def(py::init<>())
      .def_readwrite("face", &ProposalParams::face)
      .def_readwrite("hand", &ProposalParams::hand);

  m.def(
      "face_box",
      [](const std::vector<Keypoint>& body, const FaceBoxParams& params) {
        return face_box(body, params);
      },
      py::arg("body_keypoints"), py::arg("params") = FaceBoxParams());
  m.def(
      "hand_boxes",
      [](const std::vector<Keypoint>& body, const HandBoxParams& params) {
        return hand_boxes(body, params);
      },
      py::arg("body_keypoints"), py::arg("params") = HandBoxParams());
  m.def("clip_to_image", &clip_to_image);

  // --- merge ---
  py::class_<MergeParams>(m, "MergeParams")
      .def(py::init<>())
      .def_readwrite("iou_threshold", &MergeParams::iou_threshold)
      .def_readwrite("keypoint_score_floor", &MergeParams::keypoint_score_floor)
      .def_readwrite("foot_expansion", &MergeParams::foot_expansion)
      .def_readwrite("foot_min_side", &MergeParams::foot_min_side)
      .def_readwrite("proposal", &MergeParams::proposal);

  m.def(
      "merge_person",
      [](const PersonAnnotation& body_gt,
         const std::optional<DetectionRecord>& foot,
         const std::optional<DetectionRecord>& face,
         const std::optional<DetectionRecord>& lhand,
         const std::optional<DetectionRecord>& rhand,
         const MergeParams& params) {
        return merge_person(body_gt, opt_ptr(foot), opt_ptr(face),
                            opt_ptr(lhand), opt_ptr(rhand), params);
      },
      py::arg("body_gt"), py::arg("foot") = std::nullopt,
      py::arg("face") = std::nullopt, py::arg("lhand") = std::nullopt,
      py::arg("rhand") = std::nullopt, py::arg("params") = MergeParams());
  m.def(
      "assign_parts",
      [](const std::vector<PersonAnnotation>& persons,
         const std::vector<DetectionRecord>& detections, PartKind kind,
         double iou_threshold, const MergeParams& params) {
        return assign_parts(persons, detections, kind, iou_threshold, params);
      },
      py::arg("persons"), py::arg("detections"), py::arg("kind"),
      py::arg("iou_threshold") = 0.3, py::arg("params") = MergeParams());
  m.def(
      "merge_dataset",
      [](const AnnotationSet& gt, const std::optional<DetectionSet>& foot,
         const std::optional<DetectionSet>& face,
         const std::optional<DetectionSet>& lhand,
         const std::optional<DetectionSet>& rhand, const MergeParams& params) {
        return merge_dataset(gt, foot ? &*foot : nullptr,
                             face ? &*face : nullptr,
                             lhand ? &*lhand : nullptr,
                             rhand ? &*rhand : nullptr, params);
      },
      py::arg("gt"), py::arg("foot") = std::nullopt,
      py::arg("face") = std::nullopt, py::arg("lhand") = std::nullopt,
      py::arg("rhand") = std::nullopt, py::arg("params") = MergeParams());

  // --- heatmap ---
  py::class_<HeatmapParams>(m, "HeatmapParams")
      .def(py::init<>())
      .def_readwrite("input_height", &HeatmapParams::input_height)
      .def_readwrite("input_width", &HeatmapParams::input_width)
      .def_readwrite("stride", &HeatmapParams::stride)
      .def_readwrite("sigma_px", &HeatmapParams::sigma_px);

  py::class_<HeatmapStack>(m, "HeatmapStack", py::buffer_protocol())
      .def(py::init<int, int, int>(), py::arg("planes"), py::arg("height"),
           py::arg("width"))
      .def_property_readonly("planes", &HeatmapStack::planes)
      .def_property_readonly("height", &HeatmapStack::height)
      .def_property_readonly("width", &HeatmapStack::width)
      .def("at", py::overload_cast<int, int, int>(&HeatmapStack::at, py::const_))
      .def_buffer([](HeatmapStack& s) {
        return py::buffer_info(
            s.values().data(), sizeof(float),
            py::format_descriptor<float>::format(), 3,
            {static_cast<std::size_t>(s.planes()),
             static_cast<std::size_t>(s.height()),
             static_cast<std::size_t>(s.width())},
            {sizeof(float) * static_cast<std::size_t>(s.height()) * s.width(),
             sizeof(float) * static_cast<std::size_t>(s.width()),
             sizeof(float)});
      });

  m.def("encode", &encode, py::arg("pose"), py::arg("params") = HeatmapParams());
  m.def("decode", &decode, py::arg("stack"), py::arg("params") = HeatmapParams());
  m.def("write_heatmap_dump", &write_heatmap_dump);
  m.def("read_heatmap_dump", &read_heatmap_dump);

  // --- pose NMS ---
  py::class_<NmsParams>(m, "NmsParams")
      .def(py::init<>())
      .def_readwrite("lambda_", &NmsParams::lambda)
      .def_readwrite("sigma_soft", &NmsParams::sigma_soft)
      .def_readwrite("eta", &NmsParams::eta)
      .def_readwrite("score_floor", &NmsParams::score_floor);

  m.def("pose_scale", &pose_scale);
  m.def("pose_distance", &pose_distance, py::arg("p"), py::arg("q"),
        py::arg("params") = NmsParams());
  m.def("run_nms", &run_nms, py::arg("poses"), py::arg("params") = NmsParams());

  // --- eval ---
  py::class_<EvalParams>(m, "EvalParams")
      .def(py::init<>())
      .def_readwrite("max_detections", &EvalParams::max_detections)
      .def_readwrite("area_medium_min", &EvalParams::area_medium_min)
      .def_readwrite("area_medium_max", &EvalParams::area_medium_max);

  py::class_<EvalReport>(m, "EvalReport")
      .def(py::init<>())
      .def_readonly("mAP", &EvalReport::map)
      .def_readonly("AP50", &EvalReport::ap50)
      .def_readonly("AP75", &EvalReport::ap75)
      .def_readonly("APM", &EvalReport::ap_medium)
      .def_readonly("APL", &EvalReport::ap_large)
      .def_readonly("mAR", &EvalReport::mar)
      .def_readonly("AR50", &EvalReport::ar50)
      .def_readonly("AR75", &EvalReport::ar75)
      .def_readonly("ARM", &EvalReport::ar_medium)
      .def_readonly("ARL", &EvalReport::ar_large)
      .def("to_dict", [](const EvalReport& r) {
        py::dict d;
        d["mAP"] = r.map;
        d["AP50"] = r.ap50;
        d["AP75"] = r.ap75;
        d["APM"] = r.ap_medium;
        d["APL"] = r.ap_large;
        d["mAR"] = r.mar;
        d["AR50"] = r.ar50;
        d["AR75"] = r.ar75;
        d["ARM"] = r.ar_medium;
        d["ARL"] = r.ar_large;
        return d;
      });

  py::class_<DetectionMatch>(m, "DetectionMatch")
      .def_readonly("gt_id", &DetectionMatch::gt_id)
      .def_readonly("oks", &DetectionMatch::oks);
  py::class_<MatchResult>(m, "MatchResult")
      .def_readonly("detections", &MatchResult::detections)
      .def_readonly("gt_matched", &MatchResult::gt_matched);

  m.def("oks",
        [](const FullBodyPose& det, const PersonAnnotation& gt,
           const SigmaTable& sigmas) { return oks(det, gt, sigmas); },
        py::arg("det"), py::arg("gt"), py::arg("sigmas") = SigmaTable());
  m.def(
      "match_image",
      [](const std::vector<FullBodyPose>& dets,
         const std::vector<PersonAnnotation>& gts, double threshold,
         const SigmaTable& sigmas) {
        return match_image(dets, gts, threshold, sigmas);
      },
      py::arg("dets"), py::arg("gts"), py::arg("threshold"),
      py::arg("sigmas") = SigmaTable());
  m.def("evaluate", &evaluate, py::arg("gt"), py::arg("results"),
        py::arg("sigmas") = SigmaTable(), py::arg("params") = EvalParams());
  m.def("evaluate_part", &evaluate_part, py::arg("gt"), py::arg("results"),
        py::arg("kind"), py::arg("sigmas") = SigmaTable(),
        py::arg("params") = EvalParams());
  m.def("per_part_report", &per_part_report, py::arg("gt"), py::arg("results"),
        py::arg("sigmas") = SigmaTable(), py::arg("params") = EvalParams());

  // --- render / stats ---
  py::class_<RenderStyle>(m, "RenderStyle")
      .def(py::init<>())
      .def_readwrite("marker_radius", &RenderStyle::marker_radius)
      .def_readwrite("stroke_width", &RenderStyle::stroke_width)
      .def_readwrite("part_colors", &RenderStyle::part_colors);
  m.def("render_svg", &render_svg, py::arg("set"), py::arg("image_id"),
        py::arg("style") = RenderStyle());

  py::class_<DatasetStats>(m, "DatasetStats")
      .def_readonly("image_count", &DatasetStats::image_count)
      .def_readonly("person_count", &DatasetStats::person_count)
      .def_readonly("persons_per_image", &DatasetStats::persons_per_image)
      .def_readonly("part_labeled_rate", &DatasetStats::part_labeled_rate)
      .def_readonly("area_min", &DatasetStats::area_min)
      .def_readonly("area_mean", &DatasetStats::area_mean)
      .def_readonly("area_max", &DatasetStats::area_max)
      .def_readonly("area_small", &DatasetStats::area_small)
      .def_readonly("area_medium", &DatasetStats::area_medium)
      .def_readonly("area_large", &DatasetStats::area_large);
  m.def("compute_stats", &compute_stats);
  m.def("format_stats_table", &format_stats_table);
  m.def("format_stats_json", &format_stats_json);
}
