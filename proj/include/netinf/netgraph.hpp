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

#include <string>
#include <vector>

#include "netinf/types.hpp"

namespace netinf {

enum class EdgeSign { activation, inhibition };

/// Which parameter block an edge was read from.
enum class GBlock { B, Z, A, F };

std::string to_string(EdgeSign sign);
std::string to_string(GBlock block);

struct Edge {
  int source = 0;  // node index
  int target = 0;
  double weight = 0.0;
  EdgeSign sign = EdgeSign::activation;
  GBlock block = GBlock::B;
};

/// Signed directed interaction graph over p gene nodes followed by k
/// hidden nodes (named h1..hk). Edges appear in canonical order: blocks
/// B, Z, A, F, each scanned row-major.
struct InteractionGraph {
  std::vector<std::string> nodes;
  int n_genes = 0;
  std::vector<Edge> edges;

  int n_hidden() const { return static_cast<int>(nodes.size()) - n_genes; }
};

/// Thresholds |weight| > threshold (strict). Entry (i,j) of a block is an
/// edge from unit j to unit i.
InteractionGraph assemble_graph(const ModelParams& params,
                                const std::vector<std::string>& gene_names,
                                double threshold);

enum class Direction { in, out };

struct DegreeEntry {
  int node = 0;
  int degree = 0;
};

/// Nodes ranked by in- or out-degree descending, ties by node index.
/// The block overload counts only edges from that block.
std::vector<DegreeEntry> degree_ranking(const InteractionGraph& graph,
                                        Direction direction);
std::vector<DegreeEntry> degree_ranking(const InteractionGraph& graph,
                                        Direction direction, GBlock block);

/// Subgraph of edges touching `node` (radius 1), preserving node
/// indexing and canonical edge order.
InteractionGraph neighborhood(const InteractionGraph& graph, int node);

enum class GraphFormat { dot, edge_csv, json };

std::string export_graph(const InteractionGraph& graph, GraphFormat format);

/// Inverse of the json export; exact round trip.
InteractionGraph graph_from_json(const std::string& text);

}  // namespace netinf
