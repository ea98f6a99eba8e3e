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

#include "wholebody/config.hpp"

#include <json.hpp>

#include "wholebody/coco_io.hpp"
#include "wholebody/errors.hpp"

namespace wholebody {

namespace {

using nlohmann::json;

void read_double(const json& j, const char* key, double& out) {
  if (!j.contains(key)) return;
  if (!j[key].is_number()) {
    throw Error(ErrorCode::kInvalidField,
                std::string("config entry '") + key + "' must be a number");
  }
  out = j[key].get<double>();
}

void read_int(const json& j, const char* key, int& out) {
  if (!j.contains(key)) return;
  if (!j[key].is_number_integer()) {
    throw Error(ErrorCode::kInvalidField,
                std::string("config entry '") + key + "' must be an integer");
  }
  out = j[key].get<int>();
}

}  // namespace

ToolConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedJson, e.what());
  }
  if (!root.is_object()) {
    throw Error(ErrorCode::kMalformedJson, "config must be a JSON object");
  }
  ToolConfig config;
  if (root.contains("proposal")) {
    const json& j = root["proposal"];
    read_double(j, "face_expansion", config.proposal.face.expansion);
    read_double(j, "face_min_side", config.proposal.face.min_side);
    read_double(j, "hand_alpha", config.proposal.hand.alpha);
    read_double(j, "hand_gamma", config.proposal.hand.gamma);
    read_double(j, "hand_min_side", config.proposal.hand.min_side);
  }
  if (root.contains("merge")) {
    const json& j = root["merge"];
    read_double(j, "iou_threshold", config.merge.iou_threshold);
    read_double(j, "keypoint_score_floor", config.merge.keypoint_score_floor);
    read_double(j, "foot_expansion", config.merge.foot_expansion);
    read_double(j, "foot_min_side", config.merge.foot_min_side);
  }
  config.merge.proposal = config.proposal;
  if (root.contains("nms")) {
    const json& j = root["nms"];
    read_double(j, "lambda", config.nms.lambda);
    read_double(j, "sigma_soft", config.nms.sigma_soft);
    read_double(j, "eta", config.nms.eta);
    read_double(j, "score_floor", config.nms.score_floor);
  }
  if (root.contains("heatmap")) {
    const json& j = root["heatmap"];
    read_int(j, "input_height", config.heatmap.input_height);
    read_int(j, "input_width", config.heatmap.input_width);
    read_int(j, "stride", config.heatmap.stride);
    read_double(j, "sigma_px", config.heatmap.sigma_px);
  }
  if (root.contains("eval")) {
    const json& j = root["eval"];
    read_int(j, "max_detections", config.eval.max_detections);
    read_double(j, "area_medium_min", config.eval.area_medium_min);
    read_double(j, "area_medium_max", config.eval.area_medium_max);
  }
  if (root.contains("sigmas")) {
    config.sigmas = parse_sigmas(root["sigmas"].dump());
  }
  return config;
}

ToolConfig load_config(const std::string& path) {
  return parse_config(read_file(path));
}

}  // namespace wholebody
