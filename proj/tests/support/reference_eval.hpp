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

#include "wholebody/coco_io.hpp"
#include "wholebody/eval.hpp"
#include "wholebody/schema.hpp"

namespace refeval {

// Brute-force reference evaluator, written independently of the library's
// PR pipeline: plain nested loops, per-grid-point precision scans, no
// envelope trick, no parallelism. Shares only the data types.
wholebody::EvalReport reference_evaluate(const wholebody::AnnotationSet& gt,
                                         const wholebody::DetectionSet& results,
                                         const wholebody::SigmaTable& sigmas,
                                         const wholebody::EvalParams& params,
                                         int lo = 0,
                                         int hi = wholebody::kKeypointCount);

}  // namespace refeval
