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

struct LoadedModel {
  ModelParams params;
  std::vector<std::string> gene_names;  // empty when absent from the file
};

/// JSON model file: {"format":"netinf-model","version":1,
/// "dims":{"p":..,"k":..},"F":[[..]],..,"Q0":[[..]]} with matrices
/// row-major. Doubles survive a save/load round trip bit for bit.
void save_model(const ModelParams& params, const std::string& path,
                const std::vector<std::string>& gene_names = {});

LoadedModel load_model(const std::string& path);

}  // namespace netinf
