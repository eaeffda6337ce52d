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

#include <optional>
#include <string>
#include <vector>

#include "netinf/selection.hpp"
#include "netinf/types.hpp"

namespace netinf {

/// Everything the plain-text report can draw on; only params and
/// gene_names are required.
struct ReportInputs {
  ModelParams params;
  std::vector<std::string> gene_names;
  double threshold = 1e-8;
  int top_n = 10;
  std::optional<Dims> data_dims;              // enables observation count
  std::vector<double> loglik_trace;           // empty when unavailable
  std::optional<SelectionTable> selection;
  std::vector<std::string> ref_hubs_in;   // reference gene lists to compare
  std::vector<std::string> ref_hubs_out;  // the fitted hubs against
};

/// Deterministic plain-text summary: dimensions and dense/effective
/// parameter counts, per-block sparsity, top in/out-degree hubs (with
/// overlap against any reference lists), strongest edges, and the
/// selection table's best row when present.
std::string render_report(const ReportInputs& in);

}  // namespace netinf
