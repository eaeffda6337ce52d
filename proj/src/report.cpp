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
#include "netinf/report.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "netinf/netgraph.hpp"
#include "netinf/text.hpp"

namespace netinf {

namespace {

void hub_section(std::ostringstream& out, const InteractionGraph& graph,
                 Direction direction, int top_n,
                 const std::vector<std::string>& reference) {
  out << "hubs by " << (direction == Direction::in ? "in" : "out")
      << "-degree\n";
  const auto ranking = degree_ranking(graph, direction);
  int printed = 0;
  std::set<std::string> top_genes;
  for (const DegreeEntry& entry : ranking) {
    if (entry.degree == 0 || printed >= top_n) break;
    out << "  " << (printed + 1) << ". " << graph.nodes[entry.node]
        << "  degree " << entry.degree << '\n';
    if (entry.node < graph.n_genes) top_genes.insert(graph.nodes[entry.node]);
    ++printed;
  }
  if (printed == 0) out << "  (none)\n";
  if (!reference.empty()) {
    std::vector<std::string> hits;
    std::vector<std::string> misses;
    for (const std::string& name : reference)
      (top_genes.count(name) ? hits : misses).push_back(name);
    out << "  reference overlap: " << hits.size() << " of "
        << reference.size();
    if (!hits.empty()) {
      out << " (";
      for (std::size_t i = 0; i < hits.size(); ++i)
        out << (i ? ", " : "") << hits[i];
      out << ")";
    }
    if (!misses.empty()) {
      out << "; not in top " << top_n << ": ";
      for (std::size_t i = 0; i < misses.size(); ++i)
        out << (i ? ", " : "") << misses[i];
    }
    out << '\n';
  }
  out << '\n';
}

}  // namespace

std::string render_report(const ReportInputs& in) {
  in.params.validate();
  const int p = in.params.obs_dim();
  const int k = in.params.state_dim();
  const InteractionGraph graph =
      assemble_graph(in.params, in.gene_names, in.threshold);

  std::ostringstream out;
  out << "netinf report\n";
  out << "=============\n";
  out << "genes: " << p << "  hidden regulators: " << k << '\n';
  const std::int64_t dense =
      static_cast<std::int64_t>(p) * p + 2LL * k * p +
      static_cast<std::int64_t>(k) * k;
  out << "dense parameter count (p^2 + 2kp + k^2): " << dense << '\n';
  if (in.data_dims) {
    out << "observations (p * T * n_R): " << observation_count(*in.data_dims)
        << '\n';
  }
  out << "edge threshold: " << fmt_g(in.threshold, 6) << "\n\n";

  out << "sparsity\n";
  const struct {
    const char* name;
    const Matrix* m;
  } blocks[] = {{"F", &in.params.F},
                {"A", &in.params.A},
                {"Z", &in.params.Z},
                {"B", &in.params.B}};
  std::int64_t nonzero_total = 0;
  for (const auto& blk : blocks) {
    const long nz = matrix_nonzeros(*blk.m);
    nonzero_total += nz;
    out << "  " << blk.name << ": " << nz << " of " << blk.m->size()
        << " entries nonzero\n";
  }
  out << "effective parameters: " << nonzero_total << " of " << dense << '\n';
  out << "note: model scoring (AICc) counts only the effective nonzero\n";
  out << "parameters; the dense count above is the saturated upper bound.\n\n";

  if (!in.loglik_trace.empty()) {
    out << "log-likelihood trace\n";
    out << "  initial: " << fmt_g(in.loglik_trace.front(), 10) << '\n';
    out << "  final:   " << fmt_g(in.loglik_trace.back(), 10) << '\n';
    out << "  iterations: " << (in.loglik_trace.size() - 1) << "\n\n";
  }

  if (in.selection && in.selection->best_index >= 0) {
    const SelectionRow& best = in.selection->best();
    out << "selection\n";
    out << "  candidates evaluated: " << in.selection->rows.size() << '\n';
    out << "  best: s_Z=" << fmt_g(best.s_Z, 6)
        << " s_B=" << fmt_g(best.s_B, 6) << " s_F=" << fmt_g(best.s_F, 6)
        << " s_A=" << fmt_g(best.s_A, 6) << " k=" << best.k << '\n';
    out << "  best aicc: " << fmt_g(best.aicc, 10)
        << "  loglik: " << fmt_g(best.loglik, 10)
        << "  P_eff: " << best.p_eff << '\n' << '\n';
  }

  hub_section(out, graph, Direction::in, in.top_n, in.ref_hubs_in);
  hub_section(out, graph, Direction::out, in.top_n, in.ref_hubs_out);

  out << "strongest edges\n";
  std::vector<const Edge*> by_weight;
  by_weight.reserve(graph.edges.size());
  for (const Edge& e : graph.edges) by_weight.push_back(&e);
  std::stable_sort(by_weight.begin(), by_weight.end(),
                   [](const Edge* a, const Edge* b) {
                     return std::abs(a->weight) > std::abs(b->weight);
                   });
  const int n_edges = std::min<int>(in.top_n, by_weight.size());
  for (int i = 0; i < n_edges; ++i) {
    const Edge& e = *by_weight[i];
    out << "  " << graph.nodes[e.source] << " -> " << graph.nodes[e.target]
        << "  " << fmt_g(e.weight, 6) << "  [" << to_string(e.block) << ", "
        << to_string(e.sign) << "]\n";
  }
  if (n_edges == 0) out << "  (none)\n";
  return out.str();
}

}  // namespace netinf
