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
#include "netinf/em.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "netinf/errors.hpp"
#include "netinf/lars.hpp"
#include "netinf/parallel.hpp"
#include "netinf/simulate.hpp"

namespace netinf {

namespace {

void check_budget(double s, BudgetMode mode, const char* name) {
  if (!(s >= 0.0))
    throw DataError(std::string("penalties: ") + name + " must be >= 0");
  if (mode == BudgetMode::fraction && s > 1.0)
    throw DataError(std::string("penalties: ") + name +
                    " must be <= 1 in fraction mode");
}

/// One L1-constrained row problem at its budget. A zero budget never
/// touches the path.
Vector solve_row(const QuadProblem& prob, double budget, BudgetMode mode) {
  if (budget == 0.0) return Vector::Zero(prob.size());
  const LarsPath path = lars_path(prob, default_max_knots(prob.size()));
  if (mode == BudgetMode::fraction) return coefs_at_fraction(path, budget);
  return coefs_at_budget(path, budget);
}

/// Euclidean projection of v onto the L1 ball of radius s.
Vector project_l1(const Vector& v, double s) {
  if (s <= 0.0) return Vector::Zero(v.size());
  const Vector abs = v.cwiseAbs();
  if (abs.sum() <= s) return v;
  std::vector<double> u(abs.data(), abs.data() + abs.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double t = (cumsum - s) / static_cast<double>(j + 1);
    if (t < u[j]) tau = t;
  }
  return v.unaryExpr([tau](double x) {
    const double m = std::abs(x) - tau;
    return m > 0.0 ? (x < 0.0 ? -m : m) : 0.0;
  });
}

/// Projects each row onto its absolute budget. Fraction budgets are
/// path-relative and carry no fixed radius, so they are left alone.
void project_to_budgets(ModelParams& params, const Penalties& pen) {
  if (pen.mode != BudgetMode::absolute) return;
  const auto apply = [](Matrix& block, double budget) {
    const double row_budget = budget / static_cast<double>(block.rows());
    for (int i = 0; i < block.rows(); ++i)
      block.row(i) =
          project_l1(block.row(i).transpose(), row_budget).transpose();
  };
  apply(params.Z, pen.s_Z);
  apply(params.B, pen.s_B);
  apply(params.F, pen.s_F);
  apply(params.A, pen.s_A);
}

void update_block(Matrix& block, const ESuffStats& stats, RowBlock which,
                  const Matrix& partner, double budget, BudgetMode mode) {
  const int rows = static_cast<int>(block.rows());
  const double row_budget =
      mode == BudgetMode::absolute ? budget / rows : budget;
  std::vector<Vector> solved(rows);
  parallel_for(rows, [&](int i) {
    const QuadProblem prob = mstep_row_problem(stats, which, i, partner);
    solved[i] = solve_row(prob, row_budget, mode);
  });
  for (int i = 0; i < rows; ++i) block.row(i) = solved[i].transpose();
}

}  // namespace

void Penalties::validate() const {
  check_budget(s_Z, mode, "s_Z");
  check_budget(s_B, mode, "s_B");
  check_budget(s_F, mode, "s_F");
  check_budget(s_A, mode, "s_A");
}

InitSpec InitSpec::randomInit(std::uint64_t seed) {
  InitSpec spec;
  spec.kind = Kind::random;
  spec.seed = seed;
  return spec;
}

InitSpec InitSpec::explicitInit(ModelParams params) {
  InitSpec spec;
  spec.kind = Kind::explicit_params;
  spec.params = std::move(params);
  return spec;
}

ESuffStats estep(const ModelParams& params, const Dataset& data) {
  return accumulate_suffstats(params, data);
}

QuadProblem mstep_row_problem(const ESuffStats& stats, RowBlock which,
                              int row, const Matrix& other) {
  const int k = stats.dims.k;
  const int p = stats.dims.p;
  QuadProblem prob;
  switch (which) {
    case RowBlock::Z:
      if (row < 0 || row >= p) throw DataError("mstep: Z row out of range");
      if (other.rows() != p || other.cols() != p)
        throw DataError("mstep: partner of Z must be B (p x p)");
      prob.gram = stats.sum_tt;
      prob.corr =
          stats.sum_ty.col(row) - stats.sum_ty_prev * other.row(row).transpose();
      break;
    case RowBlock::B:
      if (row < 0 || row >= p) throw DataError("mstep: B row out of range");
      if (other.rows() != p || other.cols() != k)
        throw DataError("mstep: partner of B must be Z (p x k)");
      prob.gram = stats.sum_yy_prev;
      prob.corr = stats.sum_yy_lag.row(row).transpose() -
                  stats.sum_ty_prev.transpose() * other.row(row).transpose();
      break;
    case RowBlock::F:
      if (row < 0 || row >= k) throw DataError("mstep: F row out of range");
      if (other.rows() != k || other.cols() != p)
        throw DataError("mstep: partner of F must be A (k x p)");
      prob.gram = stats.sum_tt_prev;
      prob.corr = stats.sum_tt_lag.row(row).transpose() -
                  stats.sum_tprev_yprev * other.row(row).transpose();
      break;
    case RowBlock::A:
      if (row < 0 || row >= k) throw DataError("mstep: A row out of range");
      if (other.rows() != k || other.cols() != k)
        throw DataError("mstep: partner of A must be F (k x k)");
      prob.gram = stats.sum_yy_prev;
      prob.corr = stats.sum_ty_prev.row(row).transpose() -
                  stats.sum_tprev_yprev.transpose() * other.row(row).transpose();
      break;
  }
  return prob;
}

ModelParams mstep(const ESuffStats& stats, const ModelParams& current,
                  const Penalties& pen, int inner_sweeps) {
  pen.validate();
  if (inner_sweeps < 1) throw DataError("mstep: inner_sweeps must be >= 1");
  if (current.state_dim() != stats.dims.k ||
      current.obs_dim() != stats.dims.p)
    throw DataError("mstep: params and stats disagree on dimensions");

  ModelParams next = current;
  for (int sweep = 0; sweep < inner_sweeps; ++sweep) {
    update_block(next.Z, stats, RowBlock::Z, next.B, pen.s_Z, pen.mode);
    update_block(next.B, stats, RowBlock::B, next.Z, pen.s_B, pen.mode);
    update_block(next.F, stats, RowBlock::F, next.A, pen.s_F, pen.mode);
    update_block(next.A, stats, RowBlock::A, next.F, pen.s_A, pen.mode);
  }
  return next;
}

ModelParams initial_params(const Dataset& data, int k, const InitSpec& init) {
  data.validate();
  if (k < 1) throw DataError("init: k must be >= 1");
  const int p = data.dims.p;
  const int T = data.dims.T;

  switch (init.kind) {
    case InitSpec::Kind::random: {
      Dims dims = data.dims;
      dims.k = k;
      return random_sparse_params(dims, 0.5, 0.5, init.seed);
    }
    case InitSpec::Kind::explicit_params: {
      if (!init.params) throw DataError("init: explicit init without params");
      init.params->validate();
      if (init.params->obs_dim() != p || init.params->state_dim() != k)
        throw DataError("init: explicit params have wrong dimensions");
      return *init.params;
    }
    case InitSpec::Kind::data_driven:
      break;
  }

  // Lag-one regression y_t ~ B y_{t-1} with a small ridge, then a
  // k-factor decomposition of the residual covariance for Z.
  Matrix s_lag = Matrix::Zero(p, p);
  Matrix s_prev = Matrix::Zero(p, p);
  for (const Matrix& y : data.values) {
    for (int t = 2; t <= T; ++t) {
      s_lag += y.row(t - 1).transpose() * y.row(t - 2);
      s_prev += y.row(t - 2).transpose() * y.row(t - 2);
    }
  }
  Eigen::LLT<Matrix> llt(s_prev + 1e-3 * Matrix::Identity(p, p));
  ModelParams out = ModelParams::zero(p, k);
  out.B = llt.solve(s_lag.transpose()).transpose();

  Matrix resid_cov = Matrix::Zero(p, p);
  long n_resid = 0;
  for (const Matrix& y : data.values) {
    Vector y_prev = Vector::Zero(p);
    for (int t = 1; t <= T; ++t) {
      const Vector e = y.row(t - 1).transpose() - out.B * y_prev;
      resid_cov += e * e.transpose();
      y_prev = y.row(t - 1).transpose();
      ++n_resid;
    }
  }
  resid_cov /= static_cast<double>(n_resid);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(resid_cov);
  if (eig.info() != Eigen::Success)
    throw NumericError("init: residual covariance eigendecomposition failed");
  for (int j = 0; j < k && j < p; ++j) {
    const int idx = p - 1 - j;  // eigenvalues come back ascending
    const double scale = std::sqrt(std::max(eig.eigenvalues()(idx), 0.0));
    Vector col = eig.eigenvectors().col(idx) * scale;
    int arg_max = 0;
    col.cwiseAbs().maxCoeff(&arg_max);
    if (col(arg_max) < 0.0) col = -col;
    out.Z.col(j) = col;
  }
  out.F = 0.5 * Matrix::Identity(k, k);
  return out;
}

FitResult em_fit(const Dataset& data, const Dims& dims, const Penalties& pen,
                 const InitSpec& init, const ConvergenceOpts& opts) {
  data.validate();
  dims.validate();
  if (dims.p != data.dims.p || dims.T != data.dims.T ||
      dims.n_R != data.dims.n_R)
    throw DataError("em: dims do not match the dataset");
  pen.validate();
  if (opts.rel_tol <= 0.0) throw DataError("em: rel_tol must be positive");
  if (opts.max_iter < 1) throw DataError("em: max_iter must be >= 1");
  if (opts.inner_sweeps < 1)
    throw DataError("em: inner_sweeps must be >= 1");

  FitResult result;
  result.params = initial_params(data, dims.k, init);
  project_to_budgets(result.params, pen);
  double loglik = 0.0;
  ESuffStats stats = accumulate_suffstats(result.params, data, &loglik);
  if (!std::isfinite(loglik))
    throw NumericError("em: non-finite log-likelihood at initialization");
  result.loglik_trace.push_back(loglik);

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    result.params = mstep(stats, result.params, pen, opts.inner_sweeps);
    double next_loglik = 0.0;
    stats = accumulate_suffstats(result.params, data, &next_loglik);
    if (!std::isfinite(next_loglik))
      throw NumericError("em: non-finite log-likelihood at iteration " +
                         std::to_string(iter));
    result.loglik_trace.push_back(next_loglik);
    result.n_iter = iter;
    if (std::abs(next_loglik - loglik) / (1.0 + std::abs(next_loglik)) <
        opts.rel_tol) {
      result.converged = true;
      break;
    }
    loglik = next_loglik;
  }

  result.nonzeros.F = matrix_nonzeros(result.params.F);
  result.nonzeros.A = matrix_nonzeros(result.params.A);
  result.nonzeros.Z = matrix_nonzeros(result.params.Z);
  result.nonzeros.B = matrix_nonzeros(result.params.B);
  return result;
}

}  // namespace netinf
