/*
 * Copyright 2026 The triboost authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef TRIBOOST_PARALLEL_HPP_
#define TRIBOOST_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace triboost {

// Worker cap from TRIBOOST_THREADS (0 or unset = hardware concurrency).
int worker_count();

// Runs fn(i) for i in [0, n). Jobs must write to disjoint state; the result
// is required to be identical to running them sequentially. Exceptions from
// jobs are rethrown on the calling thread (first by index).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace triboost

#endif  // TRIBOOST_PARALLEL_HPP_
