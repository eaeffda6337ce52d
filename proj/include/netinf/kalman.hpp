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

/// Forward-filter output for one replicate. Arrays are indexed by model
/// time t = 0..T; predictive and innovation quantities are defined for
/// t = 1..T (index 0 is unused there). filt_mean[0]/filt_cov[0] hold the
/// prior (0, Q0).
struct FilteredMoments {
  std::vector<Vector> pred_mean;       // m-_t = F m_{t-1} + A y_{t-1}
  std::vector<Matrix> pred_cov;        // P-_t = F P_{t-1} F' + I
  std::vector<Vector> filt_mean;       // m_t
  std::vector<Matrix> filt_cov;        // P_t
  std::vector<Vector> innovation;      // e_t = y_t - Z m-_t - B y_{t-1}
  std::vector<Matrix> innovation_cov;  // S_t = Z P-_t Z' + I
  double loglik = 0.0;

  int T() const { return static_cast<int>(filt_mean.size()) - 1; }
};

/// Smoothed moments for one replicate, conditional on the whole series.
/// mean/cov are defined for t = 0..T; lag1[t] = Cov(theta_t, theta_{t-1} | y)
/// for t = 1..T (index 0 unused).
struct SmoothedMoments {
  std::vector<Vector> mean;
  std::vector<Matrix> cov;
  std::vector<Matrix> lag1;

  int T() const { return static_cast<int>(mean.size()) - 1; }
};

/// Moment sums the M-step quadratics need, accumulated over all
/// replicates and t = 1..T with y_0 = 0. Expectations are exact smoothed
/// moments: E[theta_t theta_s'] = cov/lag1 + mean*mean'.
struct ESuffStats {
  Matrix sum_tt;           // k x k, sum E[theta_t theta_t']
  Matrix sum_tt_lag;       // k x k, sum E[theta_t theta_{t-1}']
  Matrix sum_tt_prev;      // k x k, sum E[theta_{t-1} theta_{t-1}']
  Matrix sum_ty;           // k x p, sum E[theta_t] y_t'
  Matrix sum_ty_prev;      // k x p, sum E[theta_t] y_{t-1}'
  Matrix sum_tprev_yprev;  // k x p, sum E[theta_{t-1}] y_{t-1}'
  Matrix sum_yy;           // p x p, sum y_t y_t'
  Matrix sum_yy_lag;       // p x p, sum y_t y_{t-1}'
  Matrix sum_yy_prev;      // p x p, sum y_{t-1} y_{t-1}'
  Dims dims;
  int n_replicates = 0;
};

/// Standard covariance-form Kalman filter for the input-dependent model.
/// y is one replicate as a T x p matrix (row t-1 = y_t). The accumulated
/// loglik is the innovations-form marginal log density of the replicate.
FilteredMoments kalman_filter(const ModelParams& params, const Matrix& y);

/// RTS backward pass with the lag-one covariance smoother. `fm` must come
/// from kalman_filter with the same params.
SmoothedMoments rts_smoother(const ModelParams& params,
                             const FilteredMoments& fm);

/// Observed-data log-likelihood: sum of per-replicate filter logliks,
/// accumulated in ascending replicate order.
double observed_loglik(const ModelParams& params, const Dataset& data);

/// Runs filter + smoother on every replicate and accumulates the moment
/// sums. Accumulation order is fixed (ascending replicate, ascending t)
/// so results do not depend on the worker count. When `loglik` is
/// non-null it receives the summed filter log-likelihood from the same
/// pass, identical to observed_loglik.
ESuffStats accumulate_suffstats(const ModelParams& params,
                                const Dataset& data,
                                double* loglik = nullptr);

}  // namespace netinf
