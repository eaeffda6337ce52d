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
#include "netinf/lars.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "netinf/errors.hpp"

namespace netinf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Equiangular direction on the active set: solves S_AA d = sign(c_A).
/// A failed factorization gets one retry with a trace-scaled jitter.
Vector active_direction(const Matrix& gram, const std::vector<int>& active,
                        const Vector& signs) {
  const int m = static_cast<int>(active.size());
  Matrix sub(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sub(i, j) = gram(active[i], active[j]);
  Eigen::LLT<Matrix> llt(sub);
  if (llt.info() != Eigen::Success) {
    const double jitter =
        1e-10 * gram.trace() / static_cast<double>(gram.rows());
    llt.compute(sub + jitter * Matrix::Identity(m, m));
    if (llt.info() != Eigen::Success)
      throw NumericError("lars: active Gram block is not positive definite");
  }
  return llt.solve(signs);
}

}  // namespace

void QuadProblem::validate() const {
  const int n = size();
  if (n < 1) throw DataError("lars: empty problem");
  if (gram.rows() != n || gram.cols() != n)
    throw DataError("lars: Gram matrix must be " + std::to_string(n) + "x" +
                    std::to_string(n));
  if (!gram.allFinite() || !corr.allFinite())
    throw DataError("lars: non-finite problem entry");
  const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
  if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw DataError("lars: Gram matrix must be symmetric");
}

int default_max_knots(int n) { return 10 * n + 50; }

LarsPath lars_path(const QuadProblem& prob, int max_knots) {
  prob.validate();
  if (max_knots < 1) throw DataError("lars: max_knots must be >= 1");
  const int n = prob.size();
  const Matrix& S = prob.gram;

  Vector beta = Vector::Zero(n);
  Vector c = prob.corr;
  double lambda = c.cwiseAbs().maxCoeff();
  const double tie_tol = 1e-10 * std::max(1.0, lambda);

  LarsPath path;
  std::vector<int> active;
  std::vector<char> in_active(n, 0);
  auto admit = [&](int j) {
    active.insert(std::upper_bound(active.begin(), active.end(), j), j);
    in_active[j] = 1;
  };
  auto record = [&] {
    path.knots.push_back(
        LarsKnot{beta, beta.cwiseAbs().sum(), lambda, active});
  };

  record();
  if (lambda <= tie_tol) {
    path.complete = true;
    return path;
  }
  for (int j = 0; j < n; ++j)
    if (std::abs(c(j)) >= lambda - tie_tol) admit(j);
  path.knots[0].active = active;

  while (true) {
    if (static_cast<int>(path.knots.size()) >= max_knots) {
      path.complete = false;
      return path;
    }
    if (active.empty()) {
      // Every variable was dropped; re-admit whatever attains the bound.
      if (lambda <= tie_tol) {
        path.complete = true;
        return path;
      }
      for (int j = 0; j < n; ++j)
        if (std::abs(c(j)) >= lambda - tie_tol) admit(j);
    }

    const int m = static_cast<int>(active.size());
    Vector signs(m);
    for (int i = 0; i < m; ++i)
      signs(i) = c(active[i]) >= 0.0 ? 1.0 : -1.0;
    const Vector dir = active_direction(S, active, signs);
    Vector rate = Vector::Zero(n);  // a = S(:,A) d, correlation decay rates
    for (int i = 0; i < m; ++i) rate += S.col(active[i]) * dir(i);

    // Zero crossings of active coefficients (lasso drop events). Steps
    // only need to be positive; a just-entered coefficient cannot be on
    // its way back through zero.
    double delta_drop = kInf;
    std::vector<double> drop_root(m, kInf);
    for (int i = 0; i < m; ++i) {
      if (dir(i) == 0.0) continue;
      const double root = -beta(active[i]) / dir(i);
      if (root > 0.0) {
        drop_root[i] = root;
        delta_drop = std::min(delta_drop, root);
      }
    }

    // Inactive variables catching up with the shrinking bound. Strict
    // positivity keeps a variable dropped at the previous event from
    // re-entering at step zero.
    double delta_entry = kInf;
    std::vector<double> entry_root(n, kInf);
    for (int j = 0; j < n; ++j) {
      if (in_active[j]) continue;
      for (const double root : {(lambda - c(j)) / (1.0 - rate(j)),
                                (lambda + c(j)) / (1.0 + rate(j))}) {
        if (std::isfinite(root) && root > tie_tol && root < entry_root[j])
          entry_root[j] = root;
      }
      delta_entry = std::min(delta_entry, entry_root[j]);
    }

    const double delta = std::min({lambda, delta_drop, delta_entry});
    if (lambda <= delta + tie_tol) {
      // Correlations reach zero: unconstrained optimum on the active set.
      for (int i = 0; i < m; ++i) beta(active[i]) += lambda * dir(i);
      c = prob.corr - S * beta;
      lambda = c.cwiseAbs().maxCoeff();
      record();
      path.complete = true;
      return path;
    }

    for (int i = 0; i < m; ++i) beta(active[i]) += delta * dir(i);
    std::set<int> dropped;
    for (int i = 0; i < m; ++i) {
      if (drop_root[i] <= delta + tie_tol) {
        beta(active[i]) = 0.0;
        dropped.insert(active[i]);
      }
    }
    if (!dropped.empty()) {
      std::vector<int> kept;
      for (int j : active)
        if (!dropped.count(j)) kept.push_back(j);
      active = std::move(kept);
      for (int j : dropped) in_active[j] = 0;
    }
    for (int j = 0; j < n; ++j) {
      if (!in_active[j] && !dropped.count(j) && entry_root[j] <= delta + tie_tol)
        admit(j);
    }
    c = prob.corr - S * beta;
    lambda = c.cwiseAbs().maxCoeff();
    record();
  }
}

Vector coefs_at_budget(const LarsPath& path, double s) {
  if (path.knots.empty()) throw DataError("lars: empty path");
  if (!(s >= 0.0)) throw DataError("lars: budget must be >= 0");
  if (s >= path.final_l1()) return path.final_coef();
  // l1 is strictly increasing and each segment is affine, so linear
  // interpolation between the bracketing knots is exact.
  std::size_t hi = 1;
  while (path.knots[hi].l1_norm < s) ++hi;
  const LarsKnot& a = path.knots[hi - 1];
  const LarsKnot& b = path.knots[hi];
  const double span = b.l1_norm - a.l1_norm;
  if (span <= 0.0) return b.coef;
  const double w = (s - a.l1_norm) / span;
  return (1.0 - w) * a.coef + w * b.coef;
}

Vector coefs_at_fraction(const LarsPath& path, double f) {
  if (!(f >= 0.0 && f <= 1.0))
    throw DataError("lars: fraction must be in [0,1]");
  return coefs_at_budget(path, f * path.final_l1());
}

Vector max_quadratic_l1(const QuadProblem& prob, double s) {
  const LarsPath path = lars_path(prob, default_max_knots(prob.size()));
  return coefs_at_budget(path, s);
}

}  // namespace netinf
