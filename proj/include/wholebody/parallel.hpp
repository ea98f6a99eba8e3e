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

#include <cstddef>
#include <functional>

namespace wholebody {

// Worker count from the WHOLEBODY_JOBS environment variable, falling back
// to the hardware concurrency.
int parallel_jobs();

// Runs fn(i) for i in [0, n). Iterations must write only to their own
// output slots; results are assembled in index order, so the outcome does
// not depend on scheduling. jobs <= 0 selects parallel_jobs().
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  int jobs = 0);

}  // namespace wholebody
