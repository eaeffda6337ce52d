/*
 *  Copyright 2026 the netinf authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#pragma once

#include <functional>

namespace netinf {

/// Worker cap: NETINF_THREADS when set and positive, otherwise the
/// hardware concurrency (at least 1).
int max_workers();

/// Runs fn(i) for i in [0, n) across up to max_workers() threads.
/// Results must be written to per-index storage by the caller's fn;
/// exceptions propagate from the first failing index.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace netinf
