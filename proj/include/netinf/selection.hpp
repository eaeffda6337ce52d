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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "netinf/em.hpp"
#include "netinf/types.hpp"

namespace netinf {

/// Corrected AIC. Returns +infinity when the correction denominator
/// n_obs - n_params - 1 is not positive.
double aicc(double loglik, std::int64_t n_params, std::int64_t n_obs);

/// Entries of F, A, Z, B whose magnitude exceeds 1e-12.
std::int64_t effective_params(const ModelParams& params);

/// Candidate grid over the four block budgets and the hidden dimension.
struct GridSpec {
  enum class Search { full_cross, coordinate_descent };

  std::vector<double> s_Z;
  std::vector<double> s_B;
  std::vector<double> s_F;
  std::vector<double> s_A;
  std::vector<int> k_values;
  Search search = Search::full_cross;
  BudgetMode mode = BudgetMode::fraction;

  void validate() const;

  /// Fractions {0.05, 0.1, 0.2, 0.4, 0.8} on all four axes,
  /// coordinate-descent search.
  static GridSpec default_grid(std::vector<int> k_values);
};

struct SelectionRow {
  double s_Z = 0.0;
  double s_B = 0.0;
  double s_F = 0.0;
  double s_A = 0.0;
  int k = 0;
  double loglik = 0.0;
  std::int64_t p_eff = 0;
  std::int64_t n_obs = 0;
  double aicc = 0.0;
  bool converged = false;
};

/// Evaluated candidates in canonical order: ascending by
/// (k, s_Z, s_B, s_F, s_A).
struct SelectionTable {
  std::vector<SelectionRow> rows;
  int best_index = -1;

  const SelectionRow& best() const { return rows.at(best_index); }
  std::string to_csv() const;
};

/// Index of the winning row: minimal aicc among converged rows with a
/// finite criterion, ties toward smaller P_eff, then lexicographically
/// smaller (s_Z, s_B, s_F, s_A), then smaller k. -1 when no row
/// qualifies.
int best_row(const std::vector<SelectionRow>& rows);

struct SelectionResult {
  SelectionTable table;
  FitResult best_fit;
};

/// Raised when no candidate converged with a finite criterion; the table
/// of attempted fits rides along for reporting.
class SelectionError : public std::runtime_error {
 public:
  SelectionError(const std::string& what, SelectionTable table)
      : std::runtime_error(what), table_(std::move(table)) {}

  const SelectionTable& table() const { return table_; }

 private:
  SelectionTable table_;
};

/// Searches the grid with independent em_fit runs from the same init.
/// dims.k is the hidden dimension used when grid.k_values is empty.
/// Full-cross mode evaluates the whole Cartesian product; coordinate
/// descent starts each axis at its middle entry and optimizes one axis
/// at a time, sweeping in order (s_Z, s_B, s_F, s_A) until a sweep
/// brings no improvement (at most 3 sweeps). Rows come back in ascending
/// (k, s_Z, s_B, s_F, s_A) order regardless of evaluation order.
SelectionResult select_model(const Dataset& data, const Dims& dims,
                             const GridSpec& grid, const InitSpec& init = {},
                             const ConvergenceOpts& opts = {});

}  // namespace netinf
