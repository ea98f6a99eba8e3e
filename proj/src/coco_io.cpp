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

#include "wholebody/coco_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace wholebody {

namespace {

using nlohmann::json;

// In validate mode violations are collected and the offending record is
// skipped; otherwise the first error is thrown.
struct Diagnostics {
  ValidationReport* report = nullptr;

  void error(ErrorCode code, const std::string& message) {
    if (report == nullptr) throw Error(code, message);
    report->errors.push_back({code, message});
  }

  void warn(ErrorCode code, const std::string& message) {
    if (report != nullptr) report->warnings.push_back({code, message});
  }
};

bool is_integer(const json& v) {
  if (v.is_number_integer()) return true;
  if (v.is_number_float()) {
    const double d = v.get<double>();
    return std::floor(d) == d && std::isfinite(d);
  }
  return false;
}

json take_extra(const json& obj, std::initializer_list<const char*> known) {
  json extra = json::object();
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) {
          return key == k;
        }) == known.end()) {
      extra[key] = value;
    }
  }
  return extra;
}

// Parses one keypoints array into triples. Returns false (after reporting)
// when the length or a visibility value is unacceptable.
bool parse_keypoint_triples(const json& arr, const std::string& where,
                            Diagnostics& diag, std::vector<Keypoint>& out) {
  if (!arr.is_array()) {
    diag.error(ErrorCode::kInvalidField, where + ": keypoints must be an array");
    return false;
  }
  const std::size_t len = arr.size();
  if (len % 3 != 0 || (len / 3 != 17 && len / 3 != 133)) {
    diag.error(ErrorCode::kWrongKeypointCount,
               where + ": keypoints length " + std::to_string(len) +
                   " is not 3*17 or 3*133");
    return false;
  }
  out.clear();
  out.reserve(len / 3);
  for (std::size_t i = 0; i < len; i += 3) {
    if (!arr[i].is_number() || !arr[i + 1].is_number() ||
        !arr[i + 2].is_number()) {
      diag.error(ErrorCode::kInvalidField,
                 where + ": keypoints entries must be numbers");
      return false;
    }
    if (!is_integer(arr[i + 2])) {
      diag.error(ErrorCode::kBadVisibility,
                 where + ": visibility " + arr[i + 2].dump() +
                     " is not one of {0,1,2}");
      return false;
    }
    const int v = static_cast<int>(arr[i + 2].get<double>());
    if (v < 0 || v > 2) {
      diag.error(ErrorCode::kBadVisibility,
                 where + ": visibility " + std::to_string(v) +
                     " is not one of {0,1,2}");
      return false;
    }
    out.push_back({arr[i].get<double>(), arr[i + 1].get<double>(), v});
  }
  return true;
}

AnnotationSet parse_ground_truth_impl(std::string_view bytes,
                                      Diagnostics diag) {
  json root;
  try {
    root = json::parse(bytes);
  } catch (const json::exception& e) {
    diag.error(ErrorCode::kMalformedJson, e.what());
    return {};
  }
  if (!root.is_object() || !root.contains("images") ||
      !root["images"].is_array() || !root.contains("annotations") ||
      !root["annotations"].is_array()) {
    diag.error(ErrorCode::kMalformedJson,
               "ground truth must be an object with 'images' and "
               "'annotations' arrays");
    return {};
  }

  AnnotationSet set;
  set.extra = take_extra(root, {"images", "annotations", "categories"});
  if (root.contains("categories")) set.categories = root["categories"];

  std::unordered_map<std::int64_t, const ImageRecord*> by_id;
  std::set<std::int64_t> seen_image_ids;
  for (const json& jimg : root["images"]) {
    if (!jimg.is_object() || !jimg.contains("id") || !is_integer(jimg["id"])) {
      diag.error(ErrorCode::kInvalidField, "image without integer id");
      continue;
    }
    ImageRecord img;
    img.id = jimg["id"].get<std::int64_t>();
    const std::string where = "image " + std::to_string(img.id);
    if (!seen_image_ids.insert(img.id).second) {
      diag.error(ErrorCode::kInvalidField, where + ": duplicate id");
      continue;
    }
    bool ok = true;
    for (const char* dim : {"width", "height"}) {
      if (!jimg.contains(dim) || !is_integer(jimg[dim]) ||
          jimg[dim].get<std::int64_t>() <= 0) {
        diag.error(ErrorCode::kInvalidField,
                   where + ": " + dim + " must be a positive integer");
        ok = false;
      }
    }
    // The id stays known even when the record is unusable, so annotations
    // referencing it are not additionally reported as dangling.
    if (!ok) continue;
    img.width = jimg["width"].get<int>();
    img.height = jimg["height"].get<int>();
    if (jimg.contains("file_name") && jimg["file_name"].is_string()) {
      img.file_name = jimg["file_name"].get<std::string>();
    } else {
      diag.warn(ErrorCode::kInvalidField, where + ": missing file_name");
    }
    img.extra = take_extra(jimg, {"id", "width", "height", "file_name"});
    set.images.push_back(std::move(img));
  }
  for (const ImageRecord& img : set.images) by_id[img.id] = &img;

  std::set<std::int64_t> seen_ann_ids;
  for (const json& jann : root["annotations"]) {
    if (!jann.is_object() || !jann.contains("id") || !is_integer(jann["id"])) {
      diag.error(ErrorCode::kInvalidField, "annotation without integer id");
      continue;
    }
    PersonAnnotation ann;
    ann.id = jann["id"].get<std::int64_t>();
    const std::string where = "annotation " + std::to_string(ann.id);
    if (!seen_ann_ids.insert(ann.id).second) {
      diag.error(ErrorCode::kInvalidField, where + ": duplicate id");
      continue;
    }
    if (!jann.contains("image_id") || !is_integer(jann["image_id"])) {
      diag.error(ErrorCode::kInvalidField, where + ": missing image_id");
      continue;
    }
    ann.image_id = jann["image_id"].get<std::int64_t>();
    if (seen_image_ids.find(ann.image_id) == seen_image_ids.end()) {
      diag.error(ErrorCode::kDanglingImageRef,
                 where + ": image_id " + std::to_string(ann.image_id) +
                     " has no image record");
      continue;
    }
    const auto img_it = by_id.find(ann.image_id);
    if (!jann.contains("keypoints")) {
      diag.error(ErrorCode::kInvalidField, where + ": missing keypoints");
      continue;
    }
    if (!parse_keypoint_triples(jann["keypoints"], where, diag, ann.keypoints)) {
      continue;
    }
    if (jann.contains("category_id") && is_integer(jann["category_id"])) {
      ann.category_id = jann["category_id"].get<int>();
    }
    if (jann.contains("iscrowd") && is_integer(jann["iscrowd"])) {
      ann.iscrowd = jann["iscrowd"].get<int>();
    }
    if (jann.contains("bbox") && jann["bbox"].is_array() &&
        jann["bbox"].size() == 4) {
      const json& b = jann["bbox"];
      ann.bbox = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                  b[3].get<double>()};
    } else {
      diag.warn(ErrorCode::kInvalidField, where + ": missing bbox");
    }
    if (jann.contains("area") && jann["area"].is_number()) {
      ann.area = jann["area"].get<double>();
    } else {
      ann.area = ann.bbox.area();
      diag.warn(ErrorCode::kInvalidField,
                where + ": missing area, derived from bbox");
    }
    const int labeled = ann.labeled_count();
    if (labeled > 0 && !(ann.area > 0.0)) {
      diag.error(ErrorCode::kInvalidField,
                 where + ": area must be positive when keypoints are labeled");
      continue;
    }
    if (jann.contains("num_keypoints") && is_integer(jann["num_keypoints"]) &&
        jann["num_keypoints"].get<int>() != labeled) {
      diag.warn(ErrorCode::kInvalidField,
                where + ": num_keypoints " +
                    std::to_string(jann["num_keypoints"].get<int>()) +
                    " disagrees with " + std::to_string(labeled) +
                    " labeled keypoints");
    }
    ann.num_keypoints = labeled;
    if (img_it != by_id.end()) {
      const ImageRecord& img = *img_it->second;
      for (std::size_t i = 0; i < ann.keypoints.size(); ++i) {
        const Keypoint& k = ann.keypoints[i];
        if (is_labeled(k) && (k.x < 0 || k.x > img.width || k.y < 0 ||
                              k.y > img.height)) {
          diag.warn(ErrorCode::kOutOfBounds,
                    where + ": keypoint " + std::to_string(i) +
                        " lies outside the image frame");
        }
      }
    }
    ann.extra = take_extra(jann, {"id", "image_id", "category_id", "keypoints",
                                  "num_keypoints", "bbox", "area", "iscrowd"});
    set.annotations.push_back(std::move(ann));
  }
  return set;
}

}  // namespace

int PersonAnnotation::labeled_count() const {
  return static_cast<int>(
      std::count_if(keypoints.begin(), keypoints.end(),
                    [](const Keypoint& k) { return is_labeled(k); }));
}

const ImageRecord* AnnotationSet::find_image(std::int64_t id) const {
  for (const ImageRecord& img : images) {
    if (img.id == id) return &img;
  }
  return nullptr;
}

int category_keypoint_count(DetectionCategory category) {
  switch (category) {
    case DetectionCategory::Foot:
      return 6;
    case DetectionCategory::Face:
      return 68;
    case DetectionCategory::LeftHand:
    case DetectionCategory::RightHand:
      return 21;
    case DetectionCategory::WholeBody:
      return kKeypointCount;
  }
  throw Error(ErrorCode::kInvalidField, "unknown detection category");
}

const char* category_name(DetectionCategory category) {
  switch (category) {
    case DetectionCategory::Foot:
      return "foot";
    case DetectionCategory::Face:
      return "face";
    case DetectionCategory::LeftHand:
      return "left_hand";
    case DetectionCategory::RightHand:
      return "right_hand";
    case DetectionCategory::WholeBody:
      return "whole_body";
  }
  return "unknown";
}

std::optional<DetectionCategory> category_from_name(std::string_view name) {
  for (DetectionCategory c :
       {DetectionCategory::Foot, DetectionCategory::Face,
        DetectionCategory::LeftHand, DetectionCategory::RightHand,
        DetectionCategory::WholeBody}) {
    if (name == category_name(c)) return c;
  }
  return std::nullopt;
}

Box DetectionRecord::keypoint_bbox(double confidence_floor) const {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool any = false;
  for (const ScoredKeypoint& k : keypoints) {
    if (k.c < confidence_floor) continue;
    if (!any) {
      x0 = x1 = k.x;
      y0 = y1 = k.y;
      any = true;
    } else {
      x0 = std::min(x0, k.x);
      y0 = std::min(y0, k.y);
      x1 = std::max(x1, k.x);
      y1 = std::max(y1, k.y);
    }
  }
  if (!any) return {};
  return {x0, y0, x1 - x0, y1 - y0};
}

AnnotationSet parse_ground_truth(std::string_view bytes) {
  return parse_ground_truth_impl(bytes, Diagnostics{});
}

DetectionSet parse_detections(std::string_view bytes,
                              DetectionCategory category) {
  json root;
  try {
    root = json::parse(bytes);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedJson, e.what());
  }
  if (!root.is_array()) {
    throw Error(ErrorCode::kMalformedJson,
                "detection results must be a JSON array");
  }
  const int expected = category_keypoint_count(category);
  DetectionSet set;
  set.category = category;
  set.records.reserve(root.size());
  for (std::size_t idx = 0; idx < root.size(); ++idx) {
    const json& jdet = root[idx];
    const std::string where = "record " + std::to_string(idx);
    if (!jdet.is_object() || !jdet.contains("image_id") ||
        !is_integer(jdet["image_id"])) {
      throw Error(ErrorCode::kInvalidField, where + ": missing image_id");
    }
    DetectionRecord rec;
    rec.image_id = jdet["image_id"].get<std::int64_t>();
    if (!jdet.contains("keypoints") || !jdet["keypoints"].is_array()) {
      throw Error(ErrorCode::kInvalidField, where + ": missing keypoints");
    }
    const json& arr = jdet["keypoints"];
    if (arr.size() != static_cast<std::size_t>(3 * expected)) {
      throw Error(ErrorCode::kWrongKeypointCount,
                  where + ": keypoints length " + std::to_string(arr.size()) +
                      " does not match category " + category_name(category) +
                      " (expected " + std::to_string(3 * expected) + ")");
    }
    rec.keypoints.reserve(expected);
    for (std::size_t i = 0; i < arr.size(); i += 3) {
      if (!arr[i].is_number() || !arr[i + 1].is_number() ||
          !arr[i + 2].is_number()) {
        throw Error(ErrorCode::kInvalidField,
                    where + ": keypoints entries must be numbers");
      }
      rec.keypoints.push_back({arr[i].get<double>(), arr[i + 1].get<double>(),
                               arr[i + 2].get<double>()});
    }
    if (!jdet.contains("score") || !jdet["score"].is_number()) {
      throw Error(ErrorCode::kBadScore, where + ": missing score");
    }
    rec.score = jdet["score"].get<double>();
    if (!std::isfinite(rec.score) || rec.score < 0.0 || rec.score > 1.0) {
      throw Error(ErrorCode::kBadScore,
                  where + ": score " + jdet["score"].dump() +
                      " outside [0,1]");
    }
    rec.extra = take_extra(jdet, {"image_id", "keypoints", "score"});
    set.records.push_back(std::move(rec));
  }
  std::stable_sort(set.records.begin(), set.records.end(),
                   [](const DetectionRecord& a, const DetectionRecord& b) {
                     if (a.image_id != b.image_id) return a.image_id < b.image_id;
                     return a.score > b.score;
                   });
  for (std::size_t i = 0; i < set.records.size(); ++i) {
    set.records[i].id = static_cast<std::int64_t>(i);
  }
  return set;
}

std::string write_annotations(const AnnotationSet& set) {
  json root = set.extra.is_object() ? set.extra : json::object();
  json jimages = json::array();
  for (const ImageRecord& img : set.images) {
    json j = img.extra.is_object() ? img.extra : json::object();
    j["id"] = img.id;
    j["width"] = img.width;
    j["height"] = img.height;
    j["file_name"] = img.file_name;
    jimages.push_back(std::move(j));
  }
  root["images"] = std::move(jimages);
  json janns = json::array();
  for (const PersonAnnotation& ann : set.annotations) {
    json j = ann.extra.is_object() ? ann.extra : json::object();
    j["id"] = ann.id;
    j["image_id"] = ann.image_id;
    j["category_id"] = ann.category_id;
    json kps = json::array();
    for (const Keypoint& k : ann.keypoints) {
      kps.push_back(k.x);
      kps.push_back(k.y);
      kps.push_back(k.v);
    }
    j["keypoints"] = std::move(kps);
    j["num_keypoints"] = ann.labeled_count();
    j["bbox"] = {ann.bbox.x, ann.bbox.y, ann.bbox.w, ann.bbox.h};
    j["area"] = ann.area;
    j["iscrowd"] = ann.iscrowd;
    janns.push_back(std::move(j));
  }
  root["annotations"] = std::move(janns);
  root["categories"] = set.categories;
  return root.dump();
}

std::string write_detections(const DetectionSet& set) {
  json root = json::array();
  for (const DetectionRecord& rec : set.records) {
    json j = rec.extra.is_object() ? rec.extra : json::object();
    j["image_id"] = rec.image_id;
    if (!j.contains("category_id")) j["category_id"] = 1;
    json kps = json::array();
    for (const ScoredKeypoint& k : rec.keypoints) {
      kps.push_back(k.x);
      kps.push_back(k.y);
      kps.push_back(k.c);
    }
    j["keypoints"] = std::move(kps);
    j["score"] = rec.score;
    root.push_back(std::move(j));
  }
  return root.dump();
}

ValidationReport validate_ground_truth(std::string_view bytes) {
  ValidationReport report;
  parse_ground_truth_impl(bytes, Diagnostics{&report});
  return report;
}

ValidationReport validate_file(const std::string& path) {
  return validate_ground_truth(read_file(path));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "failed reading " + path);
  return buffer.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

}  // namespace wholebody
