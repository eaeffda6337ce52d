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

#include <random>

#include "netinf/errors.hpp"
#include "netinf/types.hpp"

using namespace netinf;

TEST_CASE("param_count matches the closed form") {
  CHECK(param_count({45, 4, 10, 44}) == 2401);
  CHECK(param_count({1, 1, 2, 1}) == 4);
  CHECK(param_count({10, 2, 2, 1}) == 144);
}

TEST_CASE("observation_count multiplies p, T, n_R") {
  CHECK(observation_count({45, 4, 10, 44}) == 19800);
  CHECK(observation_count({1, 1, 2, 1}) == 2);
  CHECK(observation_count({3, 1, 5, 4}) == 60);
}

TEST_CASE("counts agree with naive loops") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> small(1, 12);
  for (int trial = 0; trial < 50; ++trial) {
    Dims dims{small(rng), small(rng), 2 + small(rng), small(rng)};
    std::int64_t dense = 0;
    for (int i = 0; i < dims.k; ++i)
      for (int j = 0; j < dims.k; ++j) ++dense;  // F
    for (int i = 0; i < dims.k; ++i)
      for (int j = 0; j < dims.p; ++j) ++dense;  // A
    for (int i = 0; i < dims.p; ++i)
      for (int j = 0; j < dims.k; ++j) ++dense;  // Z
    for (int i = 0; i < dims.p; ++i)
      for (int j = 0; j < dims.p; ++j) ++dense;  // B
    CHECK(param_count(dims) == dense);

    std::int64_t obs = 0;
    for (int r = 0; r < dims.n_R; ++r)
      for (int t = 0; t < dims.T; ++t)
        for (int i = 0; i < dims.p; ++i) ++obs;
    CHECK(observation_count(dims) == obs);
  }
}

TEST_CASE("dims validation rejects out-of-range fields") {
  CHECK_NOTHROW(Dims{1, 1, 2, 1}.validate());
  CHECK_THROWS_AS((Dims{0, 1, 2, 1}.validate()), DataError);
  CHECK_THROWS_AS((Dims{1, 0, 2, 1}.validate()), DataError);
  CHECK_THROWS_AS((Dims{1, 1, 1, 1}.validate()), DataError);
  CHECK_THROWS_AS((Dims{1, 1, 2, 0}.validate()), DataError);
}

TEST_CASE("zero params have the documented shapes") {
  ModelParams params = ModelParams::zero(5, 3);
  CHECK(params.F.rows() == 3);
  CHECK(params.F.cols() == 3);
  CHECK(params.A.rows() == 3);
  CHECK(params.A.cols() == 5);
  CHECK(params.Z.rows() == 5);
  CHECK(params.Z.cols() == 3);
  CHECK(params.B.rows() == 5);
  CHECK(params.B.cols() == 5);
  CHECK(params.Q0.isApprox(Matrix::Identity(3, 3)));
  CHECK_NOTHROW(params.validate());
  CHECK(params.consistent_with({5, 3, 2, 1}));
  CHECK_FALSE(params.consistent_with({5, 2, 2, 1}));
}

TEST_CASE("params validation rejects bad shapes and bad Q0") {
  ModelParams params = ModelParams::zero(2, 2);

  SUBCASE("shape mismatch") {
    params.A = Matrix::Zero(2, 3);
    CHECK_THROWS_AS(params.validate(), DataError);
  }
  SUBCASE("non-finite entry") {
    params.B(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(params.validate(), DataError);
  }
  SUBCASE("asymmetric Q0") {
    params.Q0(0, 1) = 0.5;
    CHECK_THROWS_AS(params.validate(), DataError);
  }
  SUBCASE("non-positive-definite Q0") {
    params.Q0 = -Matrix::Identity(2, 2);
    CHECK_THROWS_AS(params.validate(), DataError);
  }
}

TEST_CASE("dataset validation checks shapes and gene names") {
  Dataset data;
  data.dims = {2, 1, 3, 2};
  data.values = {Matrix::Zero(3, 2), Matrix::Zero(3, 2)};
  data.gene_names = {"a", "b"};
  CHECK_NOTHROW(data.validate());

  SUBCASE("wrong replicate count") {
    data.values.pop_back();
    CHECK_THROWS_AS(data.validate(), DataError);
  }
  SUBCASE("wrong matrix shape") {
    data.values[1] = Matrix::Zero(2, 2);
    CHECK_THROWS_AS(data.validate(), DataError);
  }
  SUBCASE("duplicate gene names") {
    data.gene_names = {"a", "a"};
    CHECK_THROWS_AS(data.validate(), DataError);
  }
  SUBCASE("non-finite value") {
    data.values[0](1, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(data.validate(), DataError);
  }
}

TEST_CASE("matrix_nonzeros applies the tolerance") {
  Matrix m = Matrix::Zero(2, 3);
  m(0, 0) = 1.0;
  m(1, 2) = -2e-13;
  m(0, 1) = 5e-12;
  CHECK(matrix_nonzeros(m) == 2);
  CHECK(matrix_nonzeros(m, 1e-14) == 3);
  CHECK(matrix_nonzeros(m, 10.0) == 0);
}
