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

#include <array>
#include <cstdint>
#include <string>

#include "wholebody/coco_io.hpp"

namespace wholebody {

struct RenderStyle {
  double marker_radius = 3.0;
  double stroke_width = 2.0;
  // Stroke/fill per part, indexed by PartKind order.
  std::array<std::string, 5> part_colors = {"#e6194b", "#3cb44b", "#4363d8",
                                            "#f58231", "#911eb4"};
};

struct RenderSpec {
  std::string annotation_path;
  std::int64_t image_id = 0;
  std::string output_path;
  RenderStyle style;
};

// SVG skeleton plot of every annotation of one image: one marker per labeled
// keypoint, one segment per skeleton edge with both endpoints labeled.
// Byte-stable for identical inputs. Throws kUnknownImageId.
std::string render_svg(const AnnotationSet& set, std::int64_t image_id,
                       const RenderStyle& style = {});

// File-to-file variant driven by a RenderSpec.
void render(const RenderSpec& spec);

}  // namespace wholebody
