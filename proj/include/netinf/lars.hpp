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

#include <vector>

#include "netinf/types.hpp"

namespace netinf {

/// L1-constrained quadratic maximization problem
///
///   maximize 2 b'x - x'Sx   subject to  ||x||_1 <= s
///
/// stated purely through the Gram matrix S (n x n symmetric PD) and the
/// correlation vector b. No data matrix is ever formed.
struct QuadProblem {
  Matrix gram;  // S
  Vector corr;  // b

  int size() const { return static_cast<int>(corr.size()); }

  /// Shape and symmetry (1e-10) checks. Positive definiteness is
  /// enforced lazily by the solver's jitter policy.
  void validate() const;
};

/// One breakpoint of the piecewise-linear lasso path. `active` is the
/// set in force on the segment that starts at this knot.
struct LarsKnot {
  Vector coef;
  double l1_norm = 0.0;
  double lambda = 0.0;      // max_j |b_j - (S coef)_j|
  std::vector<int> active;  // ascending indices
};

/// Lasso coefficient path from the zero vector to the unconstrained
/// optimum S^-1 b (lambda = 0), or a truncated prefix when max_knots was
/// exhausted (complete = false).
struct LarsPath {
  std::vector<LarsKnot> knots;
  bool complete = false;

  const Vector& final_coef() const { return knots.back().coef; }
  double final_l1() const { return knots.back().l1_norm; }
};

/// Lasso-modified LARS driven entirely by (S, b). Correlations are
/// maintained as c = b - S beta; the equiangular direction comes from the
/// active-set submatrix of S; the step is the min-plus rule over entry
/// and zero-crossing (drop) events. Variables tying at the same step
/// enter together in ascending index order.
LarsPath lars_path(const QuadProblem& prob, int max_knots);

/// Coefficients at L1 budget s: exact linear interpolation between the
/// bracketing knots, or the final knot when s exceeds the path's reach.
Vector coefs_at_budget(const LarsPath& path, double s);

/// Budget expressed as a fraction f in [0,1] of the final knot's L1 norm.
Vector coefs_at_fraction(const LarsPath& path, double f);

/// argmax of 2b'x - x'Sx over ||x||_1 <= s, via the path. Neither the
/// Cholesky factor of S nor S^-1 is ever formed.
Vector max_quadratic_l1(const QuadProblem& prob, double s);

/// Default knot cap used by max_quadratic_l1 and the EM engine.
int default_max_knots(int n);

}  // namespace netinf
