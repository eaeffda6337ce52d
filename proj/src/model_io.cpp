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
#include "netinf/model_io.hpp"

#include <fstream>
#include <json.hpp>

#include "netinf/errors.hpp"

namespace netinf {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "netinf-model";
constexpr int kVersion = 1;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& rows, int n_rows, int n_cols,
                        const char* name) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n_rows)
    throw DataError(std::string("model json: ") + name + " must have " +
                    std::to_string(n_rows) + " rows");
  Matrix m(n_rows, n_cols);
  for (int i = 0; i < n_rows; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n_cols)
      throw DataError(std::string("model json: ") + name + " row " +
                      std::to_string(i) + " must have " +
                      std::to_string(n_cols) + " entries");
    for (int j = 0; j < n_cols; ++j) {
      if (!row[j].is_number())
        throw DataError(std::string("model json: ") + name +
                        " has a non-numeric entry");
      m(i, j) = row[j].get<double>();
    }
  }
  return m;
}

}  // namespace

void save_model(const ModelParams& params, const std::string& path,
                const std::vector<std::string>& gene_names) {
  params.validate();
  if (!gene_names.empty() &&
      static_cast<int>(gene_names.size()) != params.obs_dim())
    throw DataError("model json: gene name count does not match p");

  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["dims"] = {{"p", params.obs_dim()}, {"k", params.state_dim()}};
  doc["F"] = matrix_to_json(params.F);
  doc["A"] = matrix_to_json(params.A);
  doc["Z"] = matrix_to_json(params.Z);
  doc["B"] = matrix_to_json(params.B);
  doc["Q0"] = matrix_to_json(params.Q0);
  if (!gene_names.empty()) doc["gene_names"] = gene_names;

  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("model json: cannot write '" + path + "'");
  file << doc.dump(2) << '\n';
  if (!file) throw DataError("model json: write to '" + path + "' failed");
}

LoadedModel load_model(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw DataError("model json: cannot open '" + path + "'");
  json doc;
  try {
    file >> doc;
  } catch (const json::exception& e) {
    throw DataError("model json: parse error in '" + path + "': " + e.what());
  }

  try {
    if (doc.at("format").get<std::string>() != kFormat)
      throw DataError("model json: unrecognized format field in '" + path +
                      "'");
    if (doc.at("version").get<int>() != kVersion)
      throw DataError("model json: unsupported version " +
                      doc.at("version").dump() + " in '" + path + "'");
    const int p = doc.at("dims").at("p").get<int>();
    const int k = doc.at("dims").at("k").get<int>();
    if (p < 1 || k < 1) throw DataError("model json: dims must be >= 1");

    LoadedModel out;
    out.params.F = matrix_from_json(doc.at("F"), k, k, "F");
    out.params.A = matrix_from_json(doc.at("A"), k, p, "A");
    out.params.Z = matrix_from_json(doc.at("Z"), p, k, "Z");
    out.params.B = matrix_from_json(doc.at("B"), p, p, "B");
    out.params.Q0 = matrix_from_json(doc.at("Q0"), k, k, "Q0");
    if (doc.contains("gene_names")) {
      out.gene_names = doc.at("gene_names").get<std::vector<std::string>>();
      if (static_cast<int>(out.gene_names.size()) != p)
        throw DataError("model json: gene name count does not match p");
    }
    out.params.validate();
    return out;
  } catch (const json::exception& e) {
    throw DataError("model json: malformed document in '" + path +
                    "': " + e.what());
  }
}

}  // namespace netinf
