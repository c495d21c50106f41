// Copyright 2026 The Trailforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRAILFORGE_THREADING_HPP_
#define TRAILFORGE_THREADING_HPP_

#include <functional>

namespace tf {

// 0 or negative means "auto" (hardware concurrency).
int resolve_threads(int requested);

// Runs fn(i) for i in [0, n). Work items must write disjoint outputs; the
// result must not depend on which worker runs which item.
void parallel_for(long n, int threads, const std::function<void(long)>& fn);

}  // namespace tf

#endif  // TRAILFORGE_THREADING_HPP_
