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
#include "netinf/netgraph.hpp"

#include <algorithm>
#include <json.hpp>
#include <stdexcept>

#include "netinf/errors.hpp"
#include "netinf/text.hpp"

namespace netinf {

namespace {

using nlohmann::json;

GBlock block_from_string(const std::string& name) {
  if (name == "B") return GBlock::B;
  if (name == "Z") return GBlock::Z;
  if (name == "A") return GBlock::A;
  if (name == "F") return GBlock::F;
  throw DataError("graph: unknown block '" + name + "'");
}

/// Appends edges for one block; entry (i,j) runs from unit j to unit i.
void scan_block(std::vector<Edge>& edges, const Matrix& m, GBlock block,
                int source_base, int target_base, double threshold) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      const double w = m(i, j);
      if (std::abs(w) > threshold) {
        edges.push_back(Edge{source_base + j, target_base + i, w,
                             w > 0.0 ? EdgeSign::activation
                                     : EdgeSign::inhibition,
                             block});
      }
    }
  }
}

}  // namespace

std::string to_string(EdgeSign sign) {
  return sign == EdgeSign::activation ? "activation" : "inhibition";
}

std::string to_string(GBlock block) {
  switch (block) {
    case GBlock::B: return "B";
    case GBlock::Z: return "Z";
    case GBlock::A: return "A";
    case GBlock::F: return "F";
  }
  throw std::logic_error("unreachable");
}

InteractionGraph assemble_graph(const ModelParams& params,
                                const std::vector<std::string>& gene_names,
                                double threshold) {
  params.validate();
  if (threshold < 0.0) throw DataError("graph: threshold must be >= 0");
  const int p = params.obs_dim();
  const int k = params.state_dim();
  if (static_cast<int>(gene_names.size()) != p)
    throw DataError("graph: expected " + std::to_string(p) + " gene names");

  InteractionGraph g;
  g.n_genes = p;
  g.nodes = gene_names;
  for (int j = 0; j < k; ++j) g.nodes.push_back("h" + std::to_string(j + 1));
  scan_block(g.edges, params.B, GBlock::B, 0, 0, threshold);
  scan_block(g.edges, params.Z, GBlock::Z, p, 0, threshold);
  scan_block(g.edges, params.A, GBlock::A, 0, p, threshold);
  scan_block(g.edges, params.F, GBlock::F, p, p, threshold);
  return g;
}

static std::vector<DegreeEntry> rank_degrees(const InteractionGraph& graph,
                                             Direction direction,
                                             const GBlock* block) {
  std::vector<DegreeEntry> out(graph.nodes.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i].node = static_cast<int>(i);
  for (const Edge& e : graph.edges) {
    if (block != nullptr && e.block != *block) continue;
    const int node = direction == Direction::in ? e.target : e.source;
    ++out[node].degree;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const DegreeEntry& a, const DegreeEntry& b) {
                     return a.degree > b.degree;
                   });
  return out;
}

std::vector<DegreeEntry> degree_ranking(const InteractionGraph& graph,
                                        Direction direction) {
  return rank_degrees(graph, direction, nullptr);
}

std::vector<DegreeEntry> degree_ranking(const InteractionGraph& graph,
                                        Direction direction, GBlock block) {
  return rank_degrees(graph, direction, &block);
}

InteractionGraph neighborhood(const InteractionGraph& graph, int node) {
  if (node < 0 || node >= static_cast<int>(graph.nodes.size()))
    throw DataError("graph: node index out of range");
  InteractionGraph out;
  out.nodes = graph.nodes;
  out.n_genes = graph.n_genes;
  for (const Edge& e : graph.edges)
    if (e.source == node || e.target == node) out.edges.push_back(e);
  return out;
}

std::string export_graph(const InteractionGraph& graph, GraphFormat format) {
  switch (format) {
    case GraphFormat::dot: {
      std::string out = "digraph interactions {\n";
      for (const std::string& name : graph.nodes)
        out += "  \"" + name + "\";\n";
      for (const Edge& e : graph.edges) {
        out += "  \"" + graph.nodes[e.source] + "\" -> \"" +
               graph.nodes[e.target] + "\" [color=" +
               (e.sign == EdgeSign::activation ? "blue" : "red") +
               ", label=\"" + fmt_f(e.weight, 3) + "\"];\n";
      }
      out += "}\n";
      return out;
    }
    case GraphFormat::edge_csv: {
      std::string out = "source,target,weight,sign,block\n";
      for (const Edge& e : graph.edges) {
        out += csv_quote(graph.nodes[e.source]) + ',' +
               csv_quote(graph.nodes[e.target]) + ',' + fmt_g17(e.weight) +
               ',' + to_string(e.sign) + ',' + to_string(e.block) + '\n';
      }
      return out;
    }
    case GraphFormat::json: {
      json doc;
      doc["nodes"] = graph.nodes;
      doc["n_genes"] = graph.n_genes;
      doc["edges"] = json::array();
      for (const Edge& e : graph.edges) {
        doc["edges"].push_back({{"source", graph.nodes[e.source]},
                                {"target", graph.nodes[e.target]},
                                {"weight", e.weight},
                                {"sign", to_string(e.sign)},
                                {"block", to_string(e.block)}});
      }
      return doc.dump(2) + "\n";
    }
  }
  throw DataError("graph: unknown export format");
}

InteractionGraph graph_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("graph: invalid JSON: ") + e.what());
  }
  InteractionGraph g;
  try {
    g.nodes = doc.at("nodes").get<std::vector<std::string>>();
    g.n_genes = doc.at("n_genes").get<int>();
    for (const json& item : doc.at("edges")) {
      Edge e;
      const auto source = item.at("source").get<std::string>();
      const auto target = item.at("target").get<std::string>();
      const auto find_node = [&](const std::string& name) {
        const auto it = std::find(g.nodes.begin(), g.nodes.end(), name);
        if (it == g.nodes.end())
          throw DataError("graph: edge endpoint '" + name +
                          "' is not a node");
        return static_cast<int>(it - g.nodes.begin());
      };
      e.source = find_node(source);
      e.target = find_node(target);
      e.weight = item.at("weight").get<double>();
      const auto sign = item.at("sign").get<std::string>();
      if (sign != "activation" && sign != "inhibition")
        throw DataError("graph: unknown sign '" + sign + "'");
      e.sign =
          sign == "activation" ? EdgeSign::activation : EdgeSign::inhibition;
      e.block = block_from_string(item.at("block").get<std::string>());
      g.edges.push_back(e);
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("graph: malformed graph document: ") +
                    e.what());
  }
  if (g.n_genes < 0 || g.n_genes > static_cast<int>(g.nodes.size()))
    throw DataError("graph: n_genes out of range");
  return g;
}

}  // namespace netinf
