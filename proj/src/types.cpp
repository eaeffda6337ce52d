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
#include "netinf/types.hpp"

#include <Eigen/Cholesky>
#include <set>
#include <string>

#include "netinf/errors.hpp"

namespace netinf {

void Dims::validate() const {
  if (p < 1) throw DataError("dims: p must be >= 1, got " + std::to_string(p));
  if (k < 1) throw DataError("dims: k must be >= 1, got " + std::to_string(k));
  if (T < 2) throw DataError("dims: T must be >= 2, got " + std::to_string(T));
  if (n_R < 1)
    throw DataError("dims: n_R must be >= 1, got " + std::to_string(n_R));
}

std::int64_t param_count(const Dims& dims) {
  dims.validate();
  const std::int64_t p = dims.p;
  const std::int64_t k = dims.k;
  return p * p + 2 * k * p + k * k;
}

std::int64_t observation_count(const Dims& dims) {
  dims.validate();
  return static_cast<std::int64_t>(dims.p) * dims.T * dims.n_R;
}

ModelParams ModelParams::zero(int p, int k) {
  ModelParams out;
  out.F = Matrix::Zero(k, k);
  out.A = Matrix::Zero(k, p);
  out.Z = Matrix::Zero(p, k);
  out.B = Matrix::Zero(p, p);
  out.Q0 = Matrix::Identity(k, k);
  return out;
}

void ModelParams::validate() const {
  const auto k = F.rows();
  const auto p = Z.rows();
  if (k < 1 || p < 1)
    throw DataError("model: empty parameter matrices");
  if (F.cols() != k) throw DataError("model: F must be square");
  if (A.rows() != k || A.cols() != p)
    throw DataError("model: A must be k x p");
  if (Z.cols() != k) throw DataError("model: Z must be p x k");
  if (B.rows() != p || B.cols() != p)
    throw DataError("model: B must be p x p");
  if (Q0.rows() != k || Q0.cols() != k)
    throw DataError("model: Q0 must be k x k");
  for (const Matrix* m : {&F, &A, &Z, &B, &Q0}) {
    if (!m->allFinite()) throw DataError("model: non-finite parameter entry");
  }
  if ((Q0 - Q0.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw DataError("model: Q0 must be symmetric");
  Eigen::LLT<Matrix> llt(Q0);
  if (llt.info() != Eigen::Success)
    throw DataError("model: Q0 must be positive definite");
}

bool ModelParams::consistent_with(const Dims& dims) const {
  return state_dim() == dims.k && obs_dim() == dims.p &&
         F.cols() == dims.k && A.cols() == dims.p && Z.cols() == dims.k &&
         B.cols() == dims.p;
}

void Dataset::validate() const {
  // k is not a property of the data; it may be unset (0) here.
  if (dims.p < 1)
    throw DataError("dataset: p must be >= 1, got " + std::to_string(dims.p));
  if (dims.T < 2)
    throw DataError("dataset: T must be >= 2, got " + std::to_string(dims.T));
  if (dims.n_R < 1)
    throw DataError("dataset: n_R must be >= 1, got " +
                    std::to_string(dims.n_R));
  if (static_cast<int>(values.size()) != dims.n_R)
    throw DataError("dataset: expected " + std::to_string(dims.n_R) +
                    " replicates, got " + std::to_string(values.size()));
  for (int r = 0; r < dims.n_R; ++r) {
    const Matrix& m = values[r];
    if (m.rows() != dims.T || m.cols() != dims.p)
      throw DataError("dataset: replicate " + std::to_string(r + 1) +
                      " has shape " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + ", expected " +
                      std::to_string(dims.T) + "x" + std::to_string(dims.p));
    if (!m.allFinite())
      throw DataError("dataset: non-finite value in replicate " +
                      std::to_string(r + 1));
  }
  if (static_cast<int>(gene_names.size()) != dims.p)
    throw DataError("dataset: expected " + std::to_string(dims.p) +
                    " gene names, got " + std::to_string(gene_names.size()));
  std::set<std::string> seen;
  for (const auto& name : gene_names) {
    if (name.empty()) throw DataError("dataset: empty gene name");
    if (!seen.insert(name).second)
      throw DataError("dataset: duplicate gene name '" + name + "'");
  }
}

long matrix_nonzeros(const Matrix& m, double tol) {
  return (m.cwiseAbs().array() > tol).count();
}

}  // namespace netinf
