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

#include <string>
#include <string_view>

#include "wholebody/eval.hpp"
#include "wholebody/heatmap.hpp"
#include "wholebody/merge.hpp"
#include "wholebody/pose_nms.hpp"
#include "wholebody/proposal.hpp"
#include "wholebody/schema.hpp"

namespace wholebody {

// Tunable parameters of every subsystem, loadable from one JSON file
// (docs/formats.md) and overridable by CLI flags.
struct ToolConfig {
  ProposalParams proposal;
  MergeParams merge;
  NmsParams nms;
  HeatmapParams heatmap;
  EvalParams eval;
  SigmaTable sigmas;
};

ToolConfig parse_config(std::string_view json_text);
ToolConfig load_config(const std::string& path);

}  // namespace wholebody
