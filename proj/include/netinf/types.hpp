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

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace netinf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Problem dimensions: p observed genes, k hidden regulators,
/// T time points, n_R biological replicates.
struct Dims {
  int p = 0;
  int k = 0;
  int T = 0;
  int n_R = 0;

  /// Throws DataError unless p >= 1, k >= 1, T >= 2, n_R >= 1.
  void validate() const;
};

/// Dense parameter count of the model: p^2 + 2kp + k^2.
std::int64_t param_count(const Dims& dims);

/// Total scalar observation count: p * T * n_R.
std::int64_t observation_count(const Dims& dims);

/// Interaction matrices of the input-dependent linear Gaussian state
/// space model
///
///   theta_t = F theta_{t-1} + A y_{t-1} + eta_t,   eta_t ~ N(0, I_k)
///   y_t     = Z theta_t     + B y_{t-1} + xi_t,    xi_t ~ N(0, I_p)
///
/// with theta_0 ~ N(0, Q0) and the convention y_0 = 0. Both noise
/// covariances are fixed to the identity and carry no stored state;
/// only the four interaction matrices (and Q0) live here.
struct ModelParams {
  Matrix F;   // k x k, regulator -> regulator across time steps
  Matrix A;   // k x p, gene -> regulator across time steps
  Matrix Z;   // p x k, regulator -> gene at the same time point
  Matrix B;   // p x p, gene -> gene across time steps
  Matrix Q0;  // k x k, initial state covariance (symmetric PD)

  int state_dim() const { return static_cast<int>(F.rows()); }
  int obs_dim() const { return static_cast<int>(Z.rows()); }

  /// All-zero interaction matrices with Q0 = I.
  static ModelParams zero(int p, int k);

  /// Checks shape consistency, finiteness, and that Q0 is symmetric
  /// (within 1e-12) and positive definite. Throws DataError.
  void validate() const;

  bool consistent_with(const Dims& dims) const;
};

/// Replicated expression time series. values[r] is a T x p matrix whose
/// row t-1 holds the observation y_t of replicate r; y_0 is the zero
/// vector by convention and is not stored.
struct Dataset {
  std::vector<Matrix> values;           // n_R matrices, each T x p
  std::vector<std::string> gene_names;  // size p, unique
  Dims dims;

  void validate() const;
};

/// Simulated latent states. states[r] is a (T+1) x k matrix with row 0
/// holding theta_0.
struct HiddenTrajectory {
  std::vector<Matrix> states;
};

/// Number of entries with |value| > tol.
long matrix_nonzeros(const Matrix& m, double tol = 1e-12);

}  // namespace netinf
