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

#include <random>
#include <vector>

#include "netinf/types.hpp"

namespace netinf::testing {

/// Brute-force reference for the filter/smoother: the whole trajectory
/// (theta_0..theta_T, y_1..y_T) is one zero-mean Gaussian whose
/// covariance is built by propagating noise coefficients, so every
/// conditional moment comes from dense linear algebra.
struct JointGaussian {
  int k = 0;
  int p = 0;
  int T = 0;
  Matrix cov;  // covariance of (theta_0..theta_T, y_1..y_T)

  static JointGaussian build(const ModelParams& params, int T);

  int theta_offset(int t) const { return t * k; }
  int y_offset(int t) const { return (T + 1) * k + (t - 1) * p; }

  /// Marginal log density of one replicate (y rows are y_1..y_T).
  double loglik(const Matrix& y) const;

  struct Conditional {
    std::vector<Vector> mean;  // t = 0..T
    std::vector<Matrix> cov;   // t = 0..T
    std::vector<Matrix> lag1;  // t = 1..T, index 0 unused
  };

  /// Moments of theta given the full series, by conditioning the joint.
  Conditional condition_on(const Matrix& y) const;
};

/// Coordinate-descent lasso for max 2b'x - x'Sx - 2*lambda*||x||_1,
/// iterated to a max coordinate change below tol.
Vector cd_lasso(const Matrix& S, const Vector& b, double lambda,
                double tol = 1e-10, int max_iter = 200000);

/// Euclidean projection onto the L1 ball of radius s (sort-based).
Vector project_l1_ball(const Vector& v, double s);

/// Projected gradient ascent for max 2b'x - x'SX over ||x||_1 <= s.
Vector pg_max_quadratic_l1(const Matrix& S, const Vector& b, double s,
                           int iters = 100000);

struct XyKnot {
  Vector coef;
  double l1_norm = 0.0;
};

/// Data-matrix lasso path on (X, y): correlations are recomputed from
/// residuals X'(y - X beta) at every step. Written independently of the
/// Gram-driven solver so the two can cross-check each other.
std::vector<XyKnot> lars_path_xy(const Matrix& X, const Vector& y,
                                 int max_knots);

Vector xy_coefs_at_budget(const std::vector<XyKnot>& knots, double s);

/// Spectral radius by repeated squaring with renormalization; handles
/// complex eigenvalues that defeat plain power iteration.
double spectral_radius(const Matrix& m);

/// Area under the ROC curve of score-ranked labels (Mann-Whitney with
/// midrank ties). Returns 0.5 when either class is empty.
double auroc(const std::vector<double>& scores,
             const std::vector<bool>& labels);

/// KKT conditions for max 2b'x - x'Sx subject to ||x||_1 <= s at beta,
/// with lambda taken as max_j |b_j - (S beta)_j|: equality on the
/// support within tol, sign agreement on the support, and complementary
/// slackness lambda*(s - ||beta||_1) <= tol.
bool kkt_ok(const Matrix& S, const Vector& b, const Vector& beta, double s,
            double tol = 1e-6);

/// Random symmetric positive-definite matrix A'A/n + 0.1 I.
Matrix random_pd(int n, std::mt19937_64& rng);

Vector random_vector(int n, std::mt19937_64& rng, double scale = 1.0);

}  // namespace netinf::testing
