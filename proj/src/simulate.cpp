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
#include "netinf/simulate.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <random>

#include "netinf/errors.hpp"

namespace netinf {

namespace {

std::mt19937_64 replicate_rng(std::uint64_t seed, int replicate) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replicate)};
  return std::mt19937_64(seq);
}

Vector draw_gaussian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> norm(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = norm(rng);
  return v;
}

}  // namespace

SimResult simulate(const ModelParams& params, const Dims& dims,
                   std::uint64_t seed) {
  dims.validate();
  params.validate();
  if (!params.consistent_with(dims))
    throw DataError("simulate: parameter shapes do not match dims");

  Eigen::LLT<Matrix> q0_llt(params.Q0);
  const Matrix q0_chol = q0_llt.matrixL();

  SimResult out;
  out.data.dims = dims;
  out.data.values.resize(dims.n_R);
  out.hidden.states.resize(dims.n_R);
  out.data.gene_names.reserve(dims.p);
  for (int j = 0; j < dims.p; ++j)
    out.data.gene_names.push_back("g" + std::to_string(j + 1));

  for (int r = 0; r < dims.n_R; ++r) {
    auto rng = replicate_rng(seed, r);
    Matrix theta(dims.T + 1, dims.k);
    Matrix y(dims.T, dims.p);
    theta.row(0) = (q0_chol * draw_gaussian(rng, dims.k)).transpose();
    Vector y_prev = Vector::Zero(dims.p);
    for (int t = 1; t <= dims.T; ++t) {
      const Vector eta = draw_gaussian(rng, dims.k);
      const Vector xi = draw_gaussian(rng, dims.p);
      const Vector th =
          params.F * theta.row(t - 1).transpose() + params.A * y_prev + eta;
      const Vector yt = params.Z * th + params.B * y_prev + xi;
      theta.row(t) = th.transpose();
      y.row(t - 1) = yt.transpose();
      y_prev = yt;
    }
    out.hidden.states[r] = std::move(theta);
    out.data.values[r] = std::move(y);
  }
  return out;
}

ModelParams random_sparse_params(const Dims& dims, double density,
                                 double scale, std::uint64_t seed) {
  dims.validate();
  if (density < 0.0 || density > 1.0)
    throw DataError("random_sparse_params: density must be in [0,1]");
  if (scale <= 0.0)
    throw DataError("random_sparse_params: scale must be positive");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> value(-scale, scale);
  auto fill = [&](Matrix& m) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        m(i, j) = unit(rng) < density ? value(rng) : 0.0;
  };

  ModelParams out = ModelParams::zero(dims.p, dims.k);
  fill(out.F);
  fill(out.A);
  fill(out.Z);
  fill(out.B);

  const double rho = out.F.eigenvalues().cwiseAbs().maxCoeff();
  if (rho > 0.9) out.F *= 0.9 / rho;
  return out;
}

}  // namespace netinf
