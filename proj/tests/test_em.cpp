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
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include <Eigen/Cholesky>

#include "netinf/em.hpp"
#include "netinf/errors.hpp"
#include "netinf/simulate.hpp"
#include "support/oracles.hpp"

using namespace netinf;
namespace nt = netinf::testing;

namespace {

bool bitwise_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a.array() == b.array()).all();
}

Dataset simulated(const ModelParams& params, const Dims& dims,
                  std::uint64_t seed) {
  return simulate(params, dims, seed).data;
}

Matrix random_matrix(int rows, int cols, std::mt19937_64& rng,
                     double scale = 0.5) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

/// Direct summation of -2*Q1 over replicates and t = 1..T using exact
/// smoothed moments: sum of E||y_t - Z theta_t - B y_{t-1}||^2.
double q1_direct(const ModelParams& at, const Matrix& Z, const Matrix& B,
                 const Dataset& data) {
  double total = 0.0;
  const int T = data.dims.T;
  const int p = data.dims.p;
  for (const Matrix& y : data.values) {
    SmoothedMoments sm = rts_smoother(at, kalman_filter(at, y));
    for (int t = 1; t <= T; ++t) {
      Vector y_t = y.row(t - 1).transpose();
      Vector y_prev = t >= 2 ? Vector(y.row(t - 2).transpose())
                             : Vector(Vector::Zero(p));
      Matrix second = sm.cov[t] + sm.mean[t] * sm.mean[t].transpose();
      for (int i = 0; i < p; ++i) {
        const double resid = y_t(i) - B.row(i).dot(y_prev);
        const Vector z_i = Z.row(i).transpose();
        total += resid * resid - 2.0 * resid * z_i.dot(sm.mean[t]) +
                 z_i.dot(second * z_i);
      }
    }
  }
  return total;
}

/// Direct summation of -2*Q2: sum of E||theta_t - F theta_{t-1} - A y_{t-1}||^2.
double q2_direct(const ModelParams& at, const Matrix& F, const Matrix& A,
                 const Dataset& data) {
  double total = 0.0;
  const int T = data.dims.T;
  const int p = data.dims.p;
  const int k = static_cast<int>(F.rows());
  for (const Matrix& y : data.values) {
    SmoothedMoments sm = rts_smoother(at, kalman_filter(at, y));
    for (int t = 1; t <= T; ++t) {
      Vector y_prev = t >= 2 ? Vector(y.row(t - 2).transpose())
                             : Vector(Vector::Zero(p));
      Matrix prev_second =
          sm.cov[t - 1] + sm.mean[t - 1] * sm.mean[t - 1].transpose();
      Matrix cross = sm.lag1[t] + sm.mean[t] * sm.mean[t - 1].transpose();
      for (int i = 0; i < k; ++i) {
        const Vector f_i = F.row(i).transpose();
        const double input = A.row(i).dot(y_prev);
        const double second_ii =
            sm.cov[t](i, i) + sm.mean[t](i) * sm.mean[t](i);
        total += second_ii - 2.0 * f_i.dot(cross.row(i).transpose()) -
                 2.0 * input * sm.mean[t](i) + f_i.dot(prev_second * f_i) +
                 2.0 * input * f_i.dot(sm.mean[t - 1]) + input * input;
      }
    }
  }
  return total;
}

double row_gain(const QuadProblem& prob, const Vector& x) {
  return 2.0 * prob.corr.dot(x) - x.dot(prob.gram * x);
}

}  // namespace

TEST_CASE("estep equals accumulate_suffstats bitwise") {
  Dims dims{3, 2, 5, 3};
  ModelParams params = random_sparse_params(dims, 0.6, 0.5, 1);
  Dataset data = simulated(params, dims, 2);
  ESuffStats a = estep(params, data);
  ESuffStats b = accumulate_suffstats(params, data);
  CHECK(bitwise_equal(a.sum_tt, b.sum_tt));
  CHECK(bitwise_equal(a.sum_tt_lag, b.sum_tt_lag));
  CHECK(bitwise_equal(a.sum_tt_prev, b.sum_tt_prev));
  CHECK(bitwise_equal(a.sum_ty, b.sum_ty));
  CHECK(bitwise_equal(a.sum_ty_prev, b.sum_ty_prev));
  CHECK(bitwise_equal(a.sum_tprev_yprev, b.sum_tprev_yprev));
  CHECK(bitwise_equal(a.sum_yy, b.sum_yy));
  CHECK(bitwise_equal(a.sum_yy_lag, b.sum_yy_lag));
  CHECK(bitwise_equal(a.sum_yy_prev, b.sum_yy_prev));
  CHECK(a.dims.k == dims.k);
  CHECK(a.n_replicates == dims.n_R);
}

TEST_CASE("row problems use the raw cross-moment when the partner is zero") {
  ESuffStats stats;
  stats.dims = {2, 2, 3, 1};
  stats.n_replicates = 1;
  stats.sum_tt = Matrix::Identity(2, 2) * 3.0;
  stats.sum_tt_lag = Matrix::Identity(2, 2);
  stats.sum_tt_prev = Matrix::Identity(2, 2) * 2.0;
  stats.sum_ty = (Matrix(2, 2) << 1.0, 2.0, 3.0, 4.0).finished();
  stats.sum_ty_prev = (Matrix(2, 2) << 0.5, 0.1, 0.2, 0.3).finished();
  stats.sum_tprev_yprev = (Matrix(2, 2) << 0.4, 0.6, 0.8, 1.0).finished();
  stats.sum_yy = Matrix::Identity(2, 2) * 5.0;
  stats.sum_yy_lag = (Matrix(2, 2) << 1.5, 2.5, 3.5, 4.5).finished();
  stats.sum_yy_prev = Matrix::Identity(2, 2) * 4.0;

  Matrix zero2 = Matrix::Zero(2, 2);
  QuadProblem z0 = mstep_row_problem(stats, RowBlock::Z, 0, zero2);
  CHECK(bitwise_equal(z0.gram, stats.sum_tt));
  CHECK((z0.corr - stats.sum_ty.col(0)).lpNorm<Eigen::Infinity>() == 0.0);

  QuadProblem b1 = mstep_row_problem(stats, RowBlock::B, 1, zero2);
  CHECK(bitwise_equal(b1.gram, stats.sum_yy_prev));
  CHECK((b1.corr - stats.sum_yy_lag.row(1).transpose())
            .lpNorm<Eigen::Infinity>() == 0.0);

  QuadProblem f0 = mstep_row_problem(stats, RowBlock::F, 0, zero2);
  CHECK(bitwise_equal(f0.gram, stats.sum_tt_prev));
  CHECK((f0.corr - stats.sum_tt_lag.row(0).transpose())
            .lpNorm<Eigen::Infinity>() == 0.0);

  QuadProblem a1 = mstep_row_problem(stats, RowBlock::A, 1, zero2);
  CHECK(bitwise_equal(a1.gram, stats.sum_yy_prev));
  CHECK((a1.corr - stats.sum_ty_prev.row(1).transpose())
            .lpNorm<Eigen::Infinity>() == 0.0);

  CHECK_THROWS_AS(mstep_row_problem(stats, RowBlock::Z, 2, zero2), DataError);
}

TEST_CASE("scalar row problems match hand arithmetic") {
  ModelParams params = ModelParams::zero(1, 1);
  params.F(0, 0) = 0.5;
  params.A(0, 0) = 0.3;
  params.Z(0, 0) = 1.2;
  params.B(0, 0) = 0.4;
  Dataset data;
  data.dims = {1, 1, 2, 1};
  data.gene_names = {"g1"};
  Matrix y(2, 1);
  y << 0.7, -1.1;
  data.values = {y};

  ESuffStats stats = estep(params, data);
  Matrix partner = Matrix::Constant(1, 1, 0.25);

  QuadProblem z = mstep_row_problem(stats, RowBlock::Z, 0, partner);
  CHECK(std::abs(z.gram(0, 0) - stats.sum_tt(0, 0)) <= 1e-15);
  CHECK(std::abs(z.corr(0) - (stats.sum_ty(0, 0) -
                              stats.sum_ty_prev(0, 0) * 0.25)) <= 1e-12);

  QuadProblem b = mstep_row_problem(stats, RowBlock::B, 0, partner);
  CHECK(std::abs(b.gram(0, 0) - stats.sum_yy_prev(0, 0)) <= 1e-15);
  CHECK(std::abs(b.corr(0) - (stats.sum_yy_lag(0, 0) -
                              stats.sum_ty_prev(0, 0) * 0.25)) <= 1e-12);

  QuadProblem f = mstep_row_problem(stats, RowBlock::F, 0, partner);
  CHECK(std::abs(f.gram(0, 0) - stats.sum_tt_prev(0, 0)) <= 1e-15);
  CHECK(std::abs(f.corr(0) - (stats.sum_tt_lag(0, 0) -
                              stats.sum_tprev_yprev(0, 0) * 0.25)) <= 1e-12);

  QuadProblem a = mstep_row_problem(stats, RowBlock::A, 0, partner);
  CHECK(std::abs(a.gram(0, 0) - stats.sum_yy_prev(0, 0)) <= 1e-15);
  CHECK(std::abs(a.corr(0) - (stats.sum_ty_prev(0, 0) -
                              stats.sum_tprev_yprev(0, 0) * 0.25)) <= 1e-12);
}

TEST_CASE("row quadratics reproduce the expected log-likelihood terms") {
  Dims dims{2, 2, 4, 2};
  ModelParams params = random_sparse_params(dims, 0.7, 0.5, 5);
  Dataset data = simulated(params, dims, 6);
  ESuffStats stats = estep(params, data);
  std::mt19937_64 rng(7);

  SUBCASE("Z rows against Q1") {
    Matrix B = random_matrix(2, 2, rng);
    Matrix Z1 = random_matrix(2, 2, rng);
    Matrix Z2 = random_matrix(2, 2, rng);
    double gain = 0.0;
    for (int i = 0; i < 2; ++i) {
      QuadProblem prob = mstep_row_problem(stats, RowBlock::Z, i, B);
      gain += row_gain(prob, Z1.row(i).transpose()) -
              row_gain(prob, Z2.row(i).transpose());
    }
    const double direct = q1_direct(params, Z2, B, data) -
                          q1_direct(params, Z1, B, data);
    CHECK(std::abs(gain - direct) <= 1e-8);
  }
  SUBCASE("B rows against Q1") {
    Matrix Z = random_matrix(2, 2, rng);
    Matrix B1 = random_matrix(2, 2, rng);
    Matrix B2 = random_matrix(2, 2, rng);
    double gain = 0.0;
    for (int i = 0; i < 2; ++i) {
      QuadProblem prob = mstep_row_problem(stats, RowBlock::B, i, Z);
      gain += row_gain(prob, B1.row(i).transpose()) -
              row_gain(prob, B2.row(i).transpose());
    }
    const double direct = q1_direct(params, Z, B2, data) -
                          q1_direct(params, Z, B1, data);
    CHECK(std::abs(gain - direct) <= 1e-8);
  }
  SUBCASE("F rows against Q2") {
    Matrix A = random_matrix(2, 2, rng);
    Matrix F1 = random_matrix(2, 2, rng);
    Matrix F2 = random_matrix(2, 2, rng);
    double gain = 0.0;
    for (int i = 0; i < 2; ++i) {
      QuadProblem prob = mstep_row_problem(stats, RowBlock::F, i, A);
      gain += row_gain(prob, F1.row(i).transpose()) -
              row_gain(prob, F2.row(i).transpose());
    }
    const double direct = q2_direct(params, F2, A, data) -
                          q2_direct(params, F1, A, data);
    CHECK(std::abs(gain - direct) <= 1e-8);
  }
  SUBCASE("A rows against Q2") {
    Matrix F = random_matrix(2, 2, rng);
    Matrix A1 = random_matrix(2, 2, rng);
    Matrix A2 = random_matrix(2, 2, rng);
    double gain = 0.0;
    for (int i = 0; i < 2; ++i) {
      QuadProblem prob = mstep_row_problem(stats, RowBlock::A, i, F);
      gain += row_gain(prob, A1.row(i).transpose()) -
              row_gain(prob, A2.row(i).transpose());
    }
    const double direct = q2_direct(params, F, A2, data) -
                          q2_direct(params, F, A1, data);
    CHECK(std::abs(gain - direct) <= 1e-8);
  }
}

TEST_CASE("zero budgets zero every block") {
  Dims dims{3, 2, 4, 2};
  ModelParams params = random_sparse_params(dims, 0.8, 0.5, 9);
  Dataset data = simulated(params, dims, 10);
  ESuffStats stats = estep(params, data);
  Penalties pen;
  pen.s_Z = pen.s_B = pen.s_F = pen.s_A = 0.0;
  pen.mode = BudgetMode::absolute;
  ModelParams next = mstep(stats, params, pen);
  CHECK(next.F.isZero(0.0));
  CHECK(next.A.isZero(0.0));
  CHECK(next.Z.isZero(0.0));
  CHECK(next.B.isZero(0.0));
  CHECK(bitwise_equal(next.Q0, params.Q0));
}

TEST_CASE("huge absolute budgets reproduce the unpenalized sweep") {
  Dims dims{3, 2, 6, 4};
  ModelParams params = random_sparse_params(dims, 0.8, 0.5, 11);
  Dataset data = simulated(params, dims, 12);
  ESuffStats stats = estep(params, data);
  Penalties pen;
  pen.s_Z = pen.s_B = pen.s_F = pen.s_A = 1e6;
  pen.mode = BudgetMode::absolute;
  ModelParams next = mstep(stats, params, pen);

  auto dense_row = [&](RowBlock which, int i, const Matrix& partner) {
    QuadProblem prob = mstep_row_problem(stats, which, i, partner);
    return Vector(Eigen::LLT<Matrix>(prob.gram).solve(prob.corr));
  };
  ModelParams expected = params;
  for (int i = 0; i < dims.p; ++i)
    expected.Z.row(i) = dense_row(RowBlock::Z, i, params.B).transpose();
  for (int i = 0; i < dims.p; ++i)
    expected.B.row(i) = dense_row(RowBlock::B, i, expected.Z).transpose();
  for (int i = 0; i < dims.k; ++i)
    expected.F.row(i) = dense_row(RowBlock::F, i, params.A).transpose();
  for (int i = 0; i < dims.k; ++i)
    expected.A.row(i) = dense_row(RowBlock::A, i, expected.F).transpose();

  CHECK((next.Z - expected.Z).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK((next.B - expected.B).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK((next.F - expected.F).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK((next.A - expected.A).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("repeated sweeps reach a fixed point of the M-step") {
  Dims dims{3, 2, 5, 3};
  ModelParams truth = random_sparse_params(dims, 0.6, 0.5, 13);
  Dataset data = simulated(truth, dims, 14);
  ESuffStats stats = estep(truth, data);
  Penalties pen;
  pen.s_Z = pen.s_B = 2.0;
  pen.s_F = pen.s_A = 1.0;
  pen.mode = BudgetMode::absolute;

  ModelParams current = truth;
  for (int i = 0; i < 400; ++i) current = mstep(stats, current, pen);
  ModelParams once_more = mstep(stats, current, pen);
  CHECK((once_more.Z - current.Z).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((once_more.B - current.B).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((once_more.F - current.F).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((once_more.A - current.A).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("fraction budgets scale each row's saturated norm") {
  Dims dims{3, 2, 6, 4};
  ModelParams truth = random_sparse_params(dims, 0.8, 0.5, 15);
  Dataset data = simulated(truth, dims, 16);
  ESuffStats stats = estep(truth, data);

  // Isolate the B block: all other budgets zero, so B's partner Z is the
  // zero matrix and the row problems can be rebuilt independently here.
  Penalties pen;
  pen.s_Z = pen.s_F = pen.s_A = 0.0;
  pen.s_B = 0.6;
  pen.mode = BudgetMode::fraction;
  ModelParams next = mstep(stats, truth, pen);

  Matrix zero_z = Matrix::Zero(dims.p, dims.k);
  for (int i = 0; i < dims.p; ++i) {
    QuadProblem prob = mstep_row_problem(stats, RowBlock::B, i, zero_z);
    LarsPath path = lars_path(prob, default_max_knots(dims.p));
    const double saturated = path.final_l1();
    CHECK(std::abs(next.B.row(i).lpNorm<1>() - 0.6 * saturated) <= 1e-10);
  }
}

TEST_CASE("smaller budgets never grow a row's L1 norm") {
  Dims dims{4, 2, 6, 3};
  ModelParams truth = random_sparse_params(dims, 0.7, 0.5, 17);
  Dataset data = simulated(truth, dims, 18);
  ESuffStats stats = estep(truth, data);

  Penalties loose;
  loose.s_Z = loose.s_F = loose.s_A = 0.0;
  loose.s_B = 3.0;
  loose.mode = BudgetMode::absolute;
  Penalties tight = loose;
  tight.s_B = 1.0;

  ModelParams at_loose = mstep(stats, truth, loose);
  ModelParams at_tight = mstep(stats, truth, tight);
  for (int i = 0; i < dims.p; ++i)
    CHECK(at_tight.B.row(i).lpNorm<1>() <=
          at_loose.B.row(i).lpNorm<1>() + 1e-12);
}

TEST_CASE("rows respect their absolute budgets after a fit") {
  Dims dims{4, 2, 6, 4};
  ModelParams truth = random_sparse_params(dims, 0.5, 0.5, 19);
  Dataset data = simulated(truth, dims, 20);
  Penalties pen;
  pen.s_Z = 1.5;
  pen.s_B = 2.0;
  pen.s_F = 1.0;
  pen.s_A = 0.8;
  pen.mode = BudgetMode::absolute;
  FitResult fit = em_fit(data, dims, pen, InitSpec::dataDriven(),
                         {1e-6, 50, 1});

  auto check_rows = [](const Matrix& m, double block_budget) {
    const double row_budget = block_budget / static_cast<double>(m.rows());
    for (int i = 0; i < m.rows(); ++i)
      CHECK(m.row(i).lpNorm<1>() <= row_budget + 1e-10);
  };
  check_rows(fit.params.Z, pen.s_Z);
  check_rows(fit.params.B, pen.s_B);
  check_rows(fit.params.F, pen.s_F);
  check_rows(fit.params.A, pen.s_A);
}

TEST_CASE("noise data with zero budgets converges immediately to zero") {
  Dims dims{3, 1, 5, 4};
  Dataset data = simulated(ModelParams::zero(dims.p, dims.k), dims, 21);
  Penalties pen;
  pen.s_Z = pen.s_B = pen.s_F = pen.s_A = 0.0;
  pen.mode = BudgetMode::absolute;
  FitResult fit = em_fit(data, dims, pen);
  CHECK(fit.converged);
  CHECK(fit.n_iter <= 2);
  CHECK(fit.params.F.isZero(0.0));
  CHECK(fit.params.A.isZero(0.0));
  CHECK(fit.params.Z.isZero(0.0));
  CHECK(fit.params.B.isZero(0.0));
  CHECK(fit.nonzeros.total() == 0);
}

TEST_CASE("loglik trace ascends under fixed constraint sets") {
  for (std::uint64_t trial = 0; trial < 6; ++trial) {
    Dims dims{3 + static_cast<int>(trial % 3), 1 + static_cast<int>(trial % 2),
              6, 4};
    ModelParams truth = random_sparse_params(dims, 0.4, 0.5, trial);
    Dataset data = simulated(truth, dims, 100 + trial);
    Penalties pen;
    pen.s_Z = pen.s_B = 2.0;
    pen.s_F = pen.s_A = 1.0;
    pen.mode = BudgetMode::absolute;
    FitResult fit = em_fit(data, dims, pen, InitSpec::dataDriven(),
                           {1e-8, 60, 1});
    REQUIRE(fit.loglik_trace.size() >= 2);
    for (size_t i = 1; i < fit.loglik_trace.size(); ++i)
      CHECK(fit.loglik_trace[i] >= fit.loglik_trace[i - 1] - 1e-8);
  }
}

TEST_CASE("fraction mode converges and improves on the init") {
  Dims dims{4, 2, 8, 5};
  ModelParams truth = random_sparse_params(dims, 0.4, 0.5, 23);
  Dataset data = simulated(truth, dims, 24);
  Penalties pen;  // defaults: fraction mode
  pen.s_Z = pen.s_B = pen.s_F = pen.s_A = 0.5;
  FitResult fit = em_fit(data, dims, pen);
  CHECK(fit.converged);
  CHECK(fit.loglik() > fit.loglik_trace.front());
}

TEST_CASE("em_fit is deterministic and independent of worker count") {
  Dims dims{4, 2, 6, 4};
  ModelParams truth = random_sparse_params(dims, 0.5, 0.5, 25);
  Dataset data = simulated(truth, dims, 26);
  Penalties pen;
  pen.s_Z = pen.s_B = pen.s_F = pen.s_A = 0.4;

  setenv("NETINF_THREADS", "3", 1);
  FitResult parallel = em_fit(data, dims, pen, InitSpec::dataDriven(),
                              {1e-6, 40, 1});
  setenv("NETINF_THREADS", "1", 1);
  FitResult serial = em_fit(data, dims, pen, InitSpec::dataDriven(),
                            {1e-6, 40, 1});
  unsetenv("NETINF_THREADS");

  CHECK(parallel.loglik_trace == serial.loglik_trace);
  CHECK(bitwise_equal(parallel.params.F, serial.params.F));
  CHECK(bitwise_equal(parallel.params.A, serial.params.A));
  CHECK(bitwise_equal(parallel.params.Z, serial.params.Z));
  CHECK(bitwise_equal(parallel.params.B, serial.params.B));
}

TEST_CASE("initialization variants") {
  Dims dims{3, 2, 6, 4};
  ModelParams truth = random_sparse_params(dims, 0.5, 0.5, 27);
  Dataset data = simulated(truth, dims, 28);

  SUBCASE("data-driven init has the documented structure") {
    ModelParams init = initial_params(data, dims.k, InitSpec::dataDriven());
    CHECK_NOTHROW(init.validate());
    CHECK(init.F.isApprox(0.5 * Matrix::Identity(dims.k, dims.k)));
    CHECK(init.A.isZero(0.0));
    CHECK(init.Q0.isApprox(Matrix::Identity(dims.k, dims.k)));
    CHECK(init.Z.rows() == dims.p);
    CHECK(init.Z.cols() == dims.k);
    CHECK(!init.B.isZero(0.0));
  }
  SUBCASE("random init is seed-deterministic") {
    ModelParams a = initial_params(data, dims.k, InitSpec::randomInit(5));
    ModelParams b = initial_params(data, dims.k, InitSpec::randomInit(5));
    ModelParams c = initial_params(data, dims.k, InitSpec::randomInit(6));
    CHECK(bitwise_equal(a.Z, b.Z));
    CHECK(!bitwise_equal(a.Z, c.Z));
  }
  SUBCASE("explicit init is used as given") {
    FitResult fit = em_fit(data, dims, Penalties{},
                           InitSpec::explicitInit(truth), {1e-6, 1, 1});
    CHECK(fit.loglik_trace.front() ==
          doctest::Approx(observed_loglik(truth, data)).epsilon(1e-15));
  }
  SUBCASE("explicit init shape mismatch is rejected") {
    CHECK_THROWS_AS(
        em_fit(data, dims, Penalties{},
               InitSpec::explicitInit(ModelParams::zero(dims.p, dims.k + 1))),
        DataError);
  }
}

TEST_CASE("penalty validation") {
  Penalties pen;
  pen.s_Z = -0.1;
  CHECK_THROWS_AS(pen.validate(), DataError);
  Penalties frac;
  frac.mode = BudgetMode::fraction;
  frac.s_B = 1.2;
  CHECK_THROWS_AS(frac.validate(), DataError);
  Penalties abs_ok;
  abs_ok.mode = BudgetMode::absolute;
  abs_ok.s_B = 7.5;
  CHECK_NOTHROW(abs_ok.validate());
}

TEST_CASE("em_fit validates dims against the dataset") {
  Dims dims{3, 2, 6, 4};
  Dataset data = simulated(ModelParams::zero(dims.p, dims.k), dims, 29);
  Dims wrong = dims;
  wrong.T = 7;
  CHECK_THROWS_AS(em_fit(data, wrong, Penalties{}), DataError);
}
