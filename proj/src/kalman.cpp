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
#include "netinf/kalman.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>

#include "netinf/errors.hpp"
#include "netinf/parallel.hpp"

namespace netinf {

namespace {

void symmetrize(Matrix& m) { m = ((m + m.transpose()) * 0.5).eval(); }

bool parallel_worthwhile(const Dims& dims, int k) {
  const std::int64_t work =
      static_cast<std::int64_t>(dims.n_R) * dims.T * dims.p * k;
  return max_workers() > 1 && work >= 16384;
}

void check_observations(const ModelParams& params, const Matrix& y) {
  if (y.rows() < 1)
    throw DataError("kalman: need at least one observation");
  if (y.cols() != params.obs_dim())
    throw DataError("kalman: observation width does not match Z");
  if (!y.allFinite())
    throw DataError("kalman: observations contain non-finite values");
}

}  // namespace

FilteredMoments kalman_filter(const ModelParams& params, const Matrix& y) {
  check_observations(params, y);
  const int k = params.state_dim();
  const int p = params.obs_dim();
  const int T = static_cast<int>(y.rows());
  const Matrix eye_k = Matrix::Identity(k, k);
  const Matrix eye_p = Matrix::Identity(p, p);

  FilteredMoments fm;
  fm.pred_mean.assign(T + 1, Vector());
  fm.pred_cov.assign(T + 1, Matrix());
  fm.filt_mean.assign(T + 1, Vector());
  fm.filt_cov.assign(T + 1, Matrix());
  fm.innovation.assign(T + 1, Vector());
  fm.innovation_cov.assign(T + 1, Matrix());
  fm.filt_mean[0] = Vector::Zero(k);
  fm.filt_cov[0] = params.Q0;

  const double log2pi = std::log(2.0 * std::numbers::pi);
  Vector y_prev = Vector::Zero(p);
  for (int t = 1; t <= T; ++t) {
    const Vector y_t = y.row(t - 1).transpose();
    fm.pred_mean[t] = params.F * fm.filt_mean[t - 1] + params.A * y_prev;
    fm.pred_cov[t] =
        params.F * fm.filt_cov[t - 1] * params.F.transpose() + eye_k;
    symmetrize(fm.pred_cov[t]);

    fm.innovation[t] = y_t - params.Z * fm.pred_mean[t] - params.B * y_prev;
    fm.innovation_cov[t] =
        params.Z * fm.pred_cov[t] * params.Z.transpose() + eye_p;
    symmetrize(fm.innovation_cov[t]);

    // S_t >= I_p, so the factorization can only fail on non-finite input.
    Eigen::LLT<Matrix> llt(fm.innovation_cov[t]);
    if (llt.info() != Eigen::Success)
      throw NumericError("kalman: innovation covariance not PD at t=" +
                         std::to_string(t));
    const Matrix chol_l = llt.matrixL();
    const double logdet = 2.0 * chol_l.diagonal().array().log().sum();
    const Vector white = llt.solve(fm.innovation[t]);
    fm.loglik -= 0.5 * (p * log2pi + logdet +
                        fm.innovation[t].dot(white));

    const Matrix gain =
        llt.solve(params.Z * fm.pred_cov[t]).transpose();  // P- Z' S^-1
    fm.filt_mean[t] = fm.pred_mean[t] + gain * fm.innovation[t];
    fm.filt_cov[t] =
        fm.pred_cov[t] - gain * fm.innovation_cov[t] * gain.transpose();
    symmetrize(fm.filt_cov[t]);
    y_prev = y_t;
  }
  if (!std::isfinite(fm.loglik))
    throw NumericError("kalman: non-finite log-likelihood");
  return fm;
}

SmoothedMoments rts_smoother(const ModelParams& params,
                             const FilteredMoments& fm) {
  const int T = fm.T();
  const int k = params.state_dim();
  if (T < 1) throw DataError("smoother: empty filter output");

  // J_t = P_t F' (P-_{t+1})^-1 for t = 0..T-1.
  std::vector<Matrix> smooth_gain(T);
  for (int t = 0; t < T; ++t) {
    Eigen::LLT<Matrix> llt(fm.pred_cov[t + 1]);
    if (llt.info() != Eigen::Success)
      throw NumericError("smoother: predictive covariance not PD at t=" +
                         std::to_string(t + 1));
    smooth_gain[t] = llt.solve(params.F * fm.filt_cov[t]).transpose();
  }

  SmoothedMoments sm;
  sm.mean.assign(T + 1, Vector());
  sm.cov.assign(T + 1, Matrix());
  sm.lag1.assign(T + 1, Matrix());
  sm.mean[T] = fm.filt_mean[T];
  sm.cov[T] = fm.filt_cov[T];
  for (int t = T - 1; t >= 0; --t) {
    const Matrix& J = smooth_gain[t];
    sm.mean[t] = fm.filt_mean[t] + J * (sm.mean[t + 1] - fm.pred_mean[t + 1]);
    sm.cov[t] = fm.filt_cov[t] +
                J * (sm.cov[t + 1] - fm.pred_cov[t + 1]) * J.transpose();
    symmetrize(sm.cov[t]);
  }

  // Lag-one covariance smoother, final gain recomputed from the filter.
  Eigen::LLT<Matrix> llt_T(fm.innovation_cov[T]);
  const Matrix gain_T =
      llt_T.solve(params.Z * fm.pred_cov[T]).transpose();
  sm.lag1[T] = (Matrix::Identity(k, k) - gain_T * params.Z) * params.F *
               fm.filt_cov[T - 1];
  for (int t = T - 1; t >= 1; --t) {
    sm.lag1[t] = fm.filt_cov[t] * smooth_gain[t - 1].transpose() +
                 smooth_gain[t] *
                     (sm.lag1[t + 1] - params.F * fm.filt_cov[t]) *
                     smooth_gain[t - 1].transpose();
  }
  return sm;
}

double observed_loglik(const ModelParams& params, const Dataset& data) {
  data.validate();
  params.validate();
  if (params.obs_dim() != data.dims.p)
    throw DataError("loglik: model and dataset disagree on gene count");

  std::vector<double> per_replicate(data.dims.n_R, 0.0);
  auto one = [&](int r) {
    per_replicate[r] = kalman_filter(params, data.values[r]).loglik;
  };
  if (parallel_worthwhile(data.dims, params.state_dim())) {
    parallel_for(data.dims.n_R, one);
  } else {
    for (int r = 0; r < data.dims.n_R; ++r) one(r);
  }
  double total = 0.0;
  for (double ll : per_replicate) total += ll;
  return total;
}

ESuffStats accumulate_suffstats(const ModelParams& params,
                                const Dataset& data, double* loglik) {
  data.validate();
  params.validate();
  if (params.obs_dim() != data.dims.p)
    throw DataError("suffstats: model and dataset disagree on gene count");
  const int k = params.state_dim();
  const int p = data.dims.p;
  const int T = data.dims.T;

  struct Partial {
    Matrix tt, tt_lag, tt_prev, ty, ty_prev, tprev_yprev, yy, yy_lag, yy_prev;
    double loglik = 0.0;
  };
  std::vector<Partial> partials(data.dims.n_R);
  auto one = [&](int r) {
    const Matrix& y = data.values[r];
    const FilteredMoments fm = kalman_filter(params, y);
    const SmoothedMoments sm = rts_smoother(params, fm);
    Partial acc;
    acc.loglik = fm.loglik;
    acc.tt = Matrix::Zero(k, k);
    acc.tt_lag = Matrix::Zero(k, k);
    acc.tt_prev = Matrix::Zero(k, k);
    acc.ty = Matrix::Zero(k, p);
    acc.ty_prev = Matrix::Zero(k, p);
    acc.tprev_yprev = Matrix::Zero(k, p);
    acc.yy = Matrix::Zero(p, p);
    acc.yy_lag = Matrix::Zero(p, p);
    acc.yy_prev = Matrix::Zero(p, p);
    for (int t = 1; t <= T; ++t) {
      const Vector y_t = y.row(t - 1).transpose();
      const Vector y_prev =
          t > 1 ? Vector(y.row(t - 2).transpose()) : Vector(Vector::Zero(p));
      acc.tt += sm.cov[t] + sm.mean[t] * sm.mean[t].transpose();
      acc.tt_lag += sm.lag1[t] + sm.mean[t] * sm.mean[t - 1].transpose();
      acc.tt_prev +=
          sm.cov[t - 1] + sm.mean[t - 1] * sm.mean[t - 1].transpose();
      acc.ty += sm.mean[t] * y_t.transpose();
      acc.ty_prev += sm.mean[t] * y_prev.transpose();
      acc.tprev_yprev += sm.mean[t - 1] * y_prev.transpose();
      acc.yy += y_t * y_t.transpose();
      acc.yy_lag += y_t * y_prev.transpose();
      acc.yy_prev += y_prev * y_prev.transpose();
    }
    partials[r] = std::move(acc);
  };
  if (parallel_worthwhile(data.dims, k)) {
    parallel_for(data.dims.n_R, one);
  } else {
    for (int r = 0; r < data.dims.n_R; ++r) one(r);
  }

  ESuffStats stats;
  stats.sum_tt = Matrix::Zero(k, k);
  stats.sum_tt_lag = Matrix::Zero(k, k);
  stats.sum_tt_prev = Matrix::Zero(k, k);
  stats.sum_ty = Matrix::Zero(k, p);
  stats.sum_ty_prev = Matrix::Zero(k, p);
  stats.sum_tprev_yprev = Matrix::Zero(k, p);
  stats.sum_yy = Matrix::Zero(p, p);
  stats.sum_yy_lag = Matrix::Zero(p, p);
  stats.sum_yy_prev = Matrix::Zero(p, p);
  double ll_total = 0.0;
  for (const Partial& acc : partials) {
    ll_total += acc.loglik;
    stats.sum_tt += acc.tt;
    stats.sum_tt_lag += acc.tt_lag;
    stats.sum_tt_prev += acc.tt_prev;
    stats.sum_ty += acc.ty;
    stats.sum_ty_prev += acc.ty_prev;
    stats.sum_tprev_yprev += acc.tprev_yprev;
    stats.sum_yy += acc.yy;
    stats.sum_yy_lag += acc.yy_lag;
    stats.sum_yy_prev += acc.yy_prev;
  }
  symmetrize(stats.sum_tt);
  symmetrize(stats.sum_tt_prev);
  symmetrize(stats.sum_yy);
  symmetrize(stats.sum_yy_prev);
  stats.dims = data.dims;
  stats.dims.k = k;
  stats.n_replicates = data.dims.n_R;
  if (loglik != nullptr) *loglik = ll_total;
  return stats;
}

}  // namespace netinf
