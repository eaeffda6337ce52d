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

#include "netinf/types.hpp"

namespace netinf {

/// Reads the replicated time-series CSV format:
///
///   replicate,time,<gene1>,...,<geneP>
///
/// Every (replicate, time) pair must appear exactly once and every
/// replicate must cover the same set of times. Rows may arrive in any
/// order; times are sorted ascending, replicates numerically when every
/// id parses as a number and lexicographically otherwise. With
/// center=true each gene's grand mean is subtracted. Malformed input
/// raises DataError naming the offending row or column.
Dataset load_dataset(const std::string& path, bool center = true);

void save_dataset_csv(const Dataset& data, const std::string& path);

}  // namespace netinf
