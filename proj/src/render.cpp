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

#include "wholebody/render.hpp"

#include <cstdio>

#include "wholebody/errors.hpp"
#include "wholebody/schema.hpp"

namespace wholebody {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

const std::string& color_of_index(const RenderStyle& style, int index) {
  return style.part_colors[static_cast<std::size_t>(part_of_index(index))];
}

// Edges that bridge parts (ankle and wrist links) draw in the body color.
const std::string& edge_color(const RenderStyle& style, const SkeletonEdge& e) {
  const PartKind pa = part_of_index(e.a);
  const PartKind pb = part_of_index(e.b);
  if (pa == pb) return style.part_colors[static_cast<std::size_t>(pa)];
  return style.part_colors[static_cast<std::size_t>(PartKind::Body)];
}

}  // namespace

std::string render_svg(const AnnotationSet& set, std::int64_t image_id,
                       const RenderStyle& style) {
  const ImageRecord* image = set.find_image(image_id);
  if (image == nullptr) {
    throw Error(ErrorCode::kUnknownImageId,
                "no image with id " + std::to_string(image_id));
  }
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(image->width) + "\" height=\"" +
         std::to_string(image->height) + "\" viewBox=\"0 0 " +
         std::to_string(image->width) + " " + std::to_string(image->height) +
         "\">\n";
  for (const PersonAnnotation& ann : set.annotations) {
    if (ann.image_id != image_id) continue;
    svg += "  <g data-person=\"" + std::to_string(ann.id) + "\">\n";
    for (const SkeletonEdge& e : skeleton()) {
      if (e.a >= static_cast<int>(ann.keypoints.size()) ||
          e.b >= static_cast<int>(ann.keypoints.size())) {
        continue;
      }
      const Keypoint& a = ann.keypoints[e.a];
      const Keypoint& b = ann.keypoints[e.b];
      if (!is_labeled(a) || !is_labeled(b)) continue;
      svg += "    <line x1=\"" + fmt(a.x) + "\" y1=\"" + fmt(a.y) +
             "\" x2=\"" + fmt(b.x) + "\" y2=\"" + fmt(b.y) + "\" stroke=\"" +
             edge_color(style, e) + "\" stroke-width=\"" +
             fmt(style.stroke_width) + "\"/>\n";
    }
    for (std::size_t i = 0; i < ann.keypoints.size(); ++i) {
      const Keypoint& k = ann.keypoints[i];
      if (!is_labeled(k)) continue;
      svg += "    <circle cx=\"" + fmt(k.x) + "\" cy=\"" + fmt(k.y) +
             "\" r=\"" + fmt(style.marker_radius) + "\" fill=\"" +
             color_of_index(style, static_cast<int>(i)) + "\"/>\n";
    }
    svg += "  </g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void render(const RenderSpec& spec) {
  const AnnotationSet set = parse_ground_truth(read_file(spec.annotation_path));
  write_file(spec.output_path, render_svg(set, spec.image_id, spec.style));
}

}  // namespace wholebody
