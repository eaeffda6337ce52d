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
#include <optional>
#include <vector>

#include "netinf/kalman.hpp"
#include "netinf/lars.hpp"
#include "netinf/types.hpp"

namespace netinf {

/// How the four block budgets are interpreted.
///  - absolute: s_X is the total L1 budget for block X, split evenly
///    across its rows. Constraint sets are fixed over EM iterations.
///  - fraction: s_X in [0,1] scales each row's saturated (unpenalized)
///    L1 norm, recomputed every M-step.
enum class BudgetMode { absolute, fraction };

struct Penalties {
  double s_Z = 1.0;
  double s_B = 1.0;
  double s_F = 1.0;
  double s_A = 1.0;
  BudgetMode mode = BudgetMode::fraction;

  void validate() const;
};

enum class RowBlock { Z, B, F, A };

/// Parameter initialization for EM.
struct InitSpec {
  enum class Kind { data_driven, random, explicit_params };

  Kind kind = Kind::data_driven;
  std::uint64_t seed = 0;              // random init only
  std::optional<ModelParams> params;   // explicit init only

  static InitSpec dataDriven() { return InitSpec{}; }
  static InitSpec randomInit(std::uint64_t seed);
  static InitSpec explicitInit(ModelParams params);
};

struct ConvergenceOpts {
  double rel_tol = 1e-6;
  int max_iter = 500;
  int inner_sweeps = 1;  // M-step row-update sweeps per iteration
};

struct NonzeroCounts {
  long F = 0;
  long A = 0;
  long Z = 0;
  long B = 0;

  long total() const { return F + A + Z + B; }
};

struct FitResult {
  ModelParams params;
  std::vector<double> loglik_trace;  // init value, then one per iteration
  int n_iter = 0;
  bool converged = false;
  NonzeroCounts nonzeros;

  double loglik() const { return loglik_trace.back(); }
};

/// E-step: smoothed sufficient statistics at the current parameters.
ESuffStats estep(const ModelParams& params, const Dataset& data);

/// The L1-penalized quadratic for one row of one block, holding the
/// partner block fixed at `other`: row i of Z pairs with B, B with Z,
/// F with A, A with F.
QuadProblem mstep_row_problem(const ESuffStats& stats, RowBlock which,
                              int row, const Matrix& other);

/// One full M-step: updates Z, B, F, A in that order (each row an
/// L1-constrained quadratic solved on its lasso path), repeated
/// `inner_sweeps` times. Within a sweep every row problem sees the most
/// recently updated partner block.
ModelParams mstep(const ESuffStats& stats, const ModelParams& current,
                  const Penalties& pen, int inner_sweeps = 1);

/// Starting point for EM. Data-driven: B by per-gene ridge regression of
/// y_t on y_{t-1}, Z from the top-k principal-component loadings of the
/// residuals, F = 0.5 I, A = 0, Q0 = I.
ModelParams initial_params(const Dataset& data, int k, const InitSpec& init);

/// dims supplies the hidden dimension k; its p, T, n_R must match the
/// dataset. In absolute mode the starting point is first projected onto
/// the row budgets, so the log-likelihood trace is non-decreasing.
FitResult em_fit(const Dataset& data, const Dims& dims, const Penalties& pen,
                 const InitSpec& init = {}, const ConvergenceOpts& opts = {});

}  // namespace netinf
