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

#include <cstdint>

#include "netinf/types.hpp"

namespace netinf {

struct SimResult {
  Dataset data;
  HiddenTrajectory hidden;
};

/// Draws one dataset from the model. Replicates are independent and each
/// uses a sub-seed derived from (seed, replicate index), so replicate r
/// is reproducible regardless of how many replicates are requested.
/// Gene names default to g1..gp.
SimResult simulate(const ModelParams& params, const Dims& dims,
                   std::uint64_t seed);

/// Test-fixture generator: every entry of F, A, Z, B is nonzero with
/// probability `density`, drawn uniform on [-scale, scale]. F is rescaled
/// to spectral radius <= 0.9 if it exceeds that; Q0 = I.
ModelParams random_sparse_params(const Dims& dims, double density,
                                 double scale, std::uint64_t seed);

}  // namespace netinf
