// Copyright 2026 The Saddle Authors
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


#ifndef SADDLE_PARALLEL_H_
#define SADDLE_PARALLEL_H_

namespace saddle {

enum class Execution { kSerial, kParallel };

// Runs body(i) for i in [0, n). Each index must write only its own output
// slot; reductions happen afterwards in index order, so both paths produce
// bit-identical results.
template <class Body>
void for_each_index(int n, Execution execution, Body&& body) {
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) body(i);
  } else {
    for (int i = 0; i < n; ++i) body(i);
  }
}

}  // namespace saddle

#endif  // SADDLE_PARALLEL_H_
