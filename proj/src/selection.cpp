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
#include "netinf/selection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "netinf/errors.hpp"
#include "netinf/text.hpp"

namespace netinf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_axis(const std::vector<double>& axis, BudgetMode mode,
                const char* name) {
  if (axis.empty())
    throw DataError(std::string("grid: axis ") + name + " is empty");
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!(axis[i] >= 0.0))
      throw DataError(std::string("grid: axis ") + name +
                      " has a negative entry");
    if (mode == BudgetMode::fraction && axis[i] > 1.0)
      throw DataError(std::string("grid: axis ") + name +
                      " exceeds 1 in fraction mode");
    if (i > 0 && axis[i] < axis[i - 1])
      throw DataError(std::string("grid: axis ") + name +
                      " must be sorted ascending");
  }
}

using GridPoint = std::array<int, 4>;  // indices into the four axes

struct Evaluation {
  SelectionRow row;
  FitResult fit;
};

}  // namespace

double aicc(double loglik, std::int64_t n_params, std::int64_t n_obs) {
  if (n_obs < 1) throw DataError("aicc: n_obs must be >= 1");
  if (n_params < 0) throw DataError("aicc: n_params must be >= 0");
  const double denom = static_cast<double>(n_obs - n_params - 1);
  if (denom <= 0.0) return kInf;
  return -2.0 * loglik +
         2.0 * static_cast<double>(n_params) *
             (static_cast<double>(n_obs) / denom);
}

std::int64_t effective_params(const ModelParams& params) {
  return matrix_nonzeros(params.F) + matrix_nonzeros(params.A) +
         matrix_nonzeros(params.Z) + matrix_nonzeros(params.B);
}

void GridSpec::validate() const {
  check_axis(s_Z, mode, "s_Z");
  check_axis(s_B, mode, "s_B");
  check_axis(s_F, mode, "s_F");
  check_axis(s_A, mode, "s_A");
  for (int k : k_values)
    if (k < 1) throw DataError("grid: k values must be >= 1");
}

GridSpec GridSpec::default_grid(std::vector<int> k_values) {
  GridSpec grid;
  grid.s_Z = grid.s_B = grid.s_F = grid.s_A = {0.05, 0.1, 0.2, 0.4, 0.8};
  grid.k_values = std::move(k_values);
  grid.search = Search::coordinate_descent;
  grid.mode = BudgetMode::fraction;
  return grid;
}

std::string SelectionTable::to_csv() const {
  std::string out = "s_Z,s_B,s_F,s_A,k,loglik,P_eff,N,aicc,converged\n";
  for (const SelectionRow& row : rows) {
    out += fmt_g17(row.s_Z) + ',' + fmt_g17(row.s_B) + ',' +
           fmt_g17(row.s_F) + ',' + fmt_g17(row.s_A) + ',' +
           std::to_string(row.k) + ',' + fmt_g17(row.loglik) + ',' +
           std::to_string(row.p_eff) + ',' + std::to_string(row.n_obs) +
           ',' + fmt_g17(row.aicc) + ',' +
           (row.converged ? "true" : "false") + '\n';
  }
  return out;
}

SelectionResult select_model(const Dataset& data, const Dims& dims,
                             const GridSpec& grid, const InitSpec& init,
                             const ConvergenceOpts& opts) {
  data.validate();
  grid.validate();
  const std::vector<int> k_values =
      grid.k_values.empty() ? std::vector<int>{dims.k} : grid.k_values;
  for (int k : k_values) {
    Dims d = data.dims;
    d.k = k;
    d.validate();
  }
  const std::array<const std::vector<double>*, 4> axes = {
      &grid.s_Z, &grid.s_B, &grid.s_F, &grid.s_A};
  const std::int64_t n_obs = observation_count(
      Dims{data.dims.p, k_values.front(), data.dims.T, data.dims.n_R});

  // Cache keyed by (k, axis indices): coordinate descent revisits points.
  std::map<std::pair<int, GridPoint>, Evaluation> cache;
  auto evaluate = [&](int k, const GridPoint& point) -> const Evaluation& {
    const auto key = std::make_pair(k, point);
    auto found = cache.find(key);
    if (found != cache.end()) return found->second;

    Penalties pen;
    pen.s_Z = (*axes[0])[point[0]];
    pen.s_B = (*axes[1])[point[1]];
    pen.s_F = (*axes[2])[point[2]];
    pen.s_A = (*axes[3])[point[3]];
    pen.mode = grid.mode;
    Dims fit_dims = data.dims;
    fit_dims.k = k;

    Evaluation eval;
    eval.fit = em_fit(data, fit_dims, pen, init, opts);
    eval.row.s_Z = pen.s_Z;
    eval.row.s_B = pen.s_B;
    eval.row.s_F = pen.s_F;
    eval.row.s_A = pen.s_A;
    eval.row.k = k;
    eval.row.loglik = eval.fit.loglik();
    eval.row.p_eff = effective_params(eval.fit.params);
    eval.row.n_obs = n_obs;
    eval.row.aicc = aicc(eval.row.loglik, eval.row.p_eff, n_obs);
    eval.row.converged = eval.fit.converged;
    return cache.emplace(key, std::move(eval)).first->second;
  };

  if (grid.search == GridSpec::Search::full_cross) {
    for (int k : k_values)
      for (std::size_t i0 = 0; i0 < axes[0]->size(); ++i0)
        for (std::size_t i1 = 0; i1 < axes[1]->size(); ++i1)
          for (std::size_t i2 = 0; i2 < axes[2]->size(); ++i2)
            for (std::size_t i3 = 0; i3 < axes[3]->size(); ++i3)
              evaluate(k, GridPoint{static_cast<int>(i0),
                                    static_cast<int>(i1),
                                    static_cast<int>(i2),
                                    static_cast<int>(i3)});
  } else {
    for (int k : k_values) {
      GridPoint point;
      for (int a = 0; a < 4; ++a)
        point[a] = static_cast<int>(axes[a]->size()) / 2;
      double best = evaluate(k, point).row.aicc;
      for (int sweep = 0; sweep < 3; ++sweep) {
        bool improved = false;
        for (int a = 0; a < 4; ++a) {
          GridPoint probe = point;
          for (int i = 0; i < static_cast<int>(axes[a]->size()); ++i) {
            probe[a] = i;
            const double score = evaluate(k, probe).row.aicc;
            if (score < best) {
              best = score;
              point = probe;
              improved = true;
            }
          }
        }
        if (!improved) break;
      }
    }
  }

  SelectionResult result;
  result.table.rows.reserve(cache.size());
  std::vector<const Evaluation*> ordered;
  ordered.reserve(cache.size());
  for (const auto& [key, eval] : cache) ordered.push_back(&eval);
  auto row_key = [](const SelectionRow& r) {
    return std::make_tuple(r.k, r.s_Z, r.s_B, r.s_F, r.s_A);
  };
  std::sort(ordered.begin(), ordered.end(),
            [&](const Evaluation* a, const Evaluation* b) {
              return row_key(a->row) < row_key(b->row);
            });

  for (const Evaluation* eval : ordered)
    result.table.rows.push_back(eval->row);
  const int best_index = best_row(result.table.rows);
  if (best_index < 0)
    throw SelectionError("selection: no grid point converged to a finite "
                         "criterion",
                         std::move(result.table));
  result.table.best_index = best_index;
  result.best_fit = ordered[best_index]->fit;
  return result;
}

int best_row(const std::vector<SelectionRow>& rows) {
  int best = -1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SelectionRow& row = rows[i];
    if (!row.converged || !std::isfinite(row.aicc)) continue;
    if (best < 0) {
      best = static_cast<int>(i);
      continue;
    }
    const SelectionRow& cur = rows[best];
    const auto challenger = std::make_tuple(row.aicc, row.p_eff, row.s_Z,
                                            row.s_B, row.s_F, row.s_A, row.k);
    const auto incumbent = std::make_tuple(cur.aicc, cur.p_eff, cur.s_Z,
                                           cur.s_B, cur.s_F, cur.s_A, cur.k);
    if (challenger < incumbent) best = static_cast<int>(i);
  }
  return best;
}

}  // namespace netinf
