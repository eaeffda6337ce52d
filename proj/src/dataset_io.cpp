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
#include "netinf/dataset_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "netinf/errors.hpp"
#include "netinf/text.hpp"

namespace netinf {

namespace {

std::vector<std::string> split_csv_line(const std::string& line, long row) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted)
    throw DataError("dataset csv: row " + std::to_string(row) +
                    ": unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& raw, long row, const std::string& col) {
  const std::string token = trim(raw);
  const char* begin = token.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (token.empty() || end != begin + token.size() || !std::isfinite(value))
    throw DataError("dataset csv: row " + std::to_string(row) + ", column " +
                    col + ": non-numeric value '" + raw + "'");
  return value;
}

}  // namespace

Dataset load_dataset(const std::string& path, bool center) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("dataset csv: cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line))
    throw DataError("dataset csv: '" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> header = split_csv_line(line, 1);
  if (header.size() < 3 || trim(header[0]) != "replicate" ||
      trim(header[1]) != "time")
    throw DataError(
        "dataset csv: header must be replicate,time,<gene names>");
  std::vector<std::string> gene_names(header.begin() + 2, header.end());
  const int p = static_cast<int>(gene_names.size());

  struct RepData {
    std::map<double, std::pair<Vector, long>> by_time;  // value row, csv row
  };
  std::vector<std::string> rep_order;
  std::map<std::string, RepData> reps;

  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line, row);
    if (static_cast<int>(fields.size()) != p + 2)
      throw DataError("dataset csv: row " + std::to_string(row) +
                      ": expected " + std::to_string(p + 2) +
                      " fields, got " + std::to_string(fields.size()));
    const std::string rep = trim(fields[0]);
    if (rep.empty())
      throw DataError("dataset csv: row " + std::to_string(row) +
                      ": empty replicate id");
    const double time = parse_number(fields[1], row, "time");
    Vector values(p);
    for (int j = 0; j < p; ++j)
      values(j) = parse_number(fields[j + 2], row, gene_names[j]);

    if (reps.find(rep) == reps.end()) rep_order.push_back(rep);
    auto& slot = reps[rep].by_time;
    const auto found = slot.find(time);
    if (found != slot.end())
      throw DataError("dataset csv: row " + std::to_string(row) +
                      ": duplicate (replicate,time) pair (" + rep + "," +
                      trim(fields[1]) + "), first seen at row " +
                      std::to_string(found->second.second));
    slot.emplace(time, std::make_pair(std::move(values), row));
  }
  if (rep_order.empty())
    throw DataError("dataset csv: '" + path + "' has no data rows");

  // Replicate order must not depend on row order: numeric when every id
  // parses as a number, lexicographic otherwise.
  const auto numeric_id = [](const std::string& s, double* out) {
    const char* begin = s.c_str();
    char* end = nullptr;
    *out = std::strtod(begin, &end);
    return end == begin + s.size() && std::isfinite(*out);
  };
  bool all_numeric = true;
  for (const std::string& rep : rep_order) {
    double value = 0.0;
    if (!numeric_id(rep, &value)) {
      all_numeric = false;
      break;
    }
  }
  std::sort(rep_order.begin(), rep_order.end(),
            [&](const std::string& a, const std::string& b) {
              if (all_numeric) {
                double va = 0.0;
                double vb = 0.0;
                numeric_id(a, &va);
                numeric_id(b, &vb);
                if (va != vb) return va < vb;
              }
              return a < b;
            });

  // Every replicate must cover the same ordered set of times.
  std::vector<double> times;
  for (const auto& [time, unused] : reps[rep_order.front()].by_time)
    times.push_back(time);
  for (const std::string& rep : rep_order) {
    const auto& by_time = reps[rep].by_time;
    for (double t : times)
      if (by_time.find(t) == by_time.end())
        throw DataError("dataset csv: replicate " + rep + " is missing time " +
                        fmt_g(t, 15));
    if (by_time.size() != times.size()) {
      for (const auto& [t, unused] : by_time)
        if (std::find(times.begin(), times.end(), t) == times.end())
          throw DataError("dataset csv: replicate " + rep_order.front() +
                          " is missing time " + fmt_g(t, 15));
    }
  }
  if (times.size() < 2)
    throw DataError("dataset csv: need at least 2 time points, got " +
                    std::to_string(times.size()));

  Dataset data;
  data.gene_names = std::move(gene_names);
  data.dims.p = p;
  data.dims.k = 0;
  data.dims.T = static_cast<int>(times.size());
  data.dims.n_R = static_cast<int>(rep_order.size());
  data.values.reserve(rep_order.size());
  for (const std::string& rep : rep_order) {
    Matrix m(data.dims.T, p);
    for (int t = 0; t < data.dims.T; ++t)
      m.row(t) = reps[rep].by_time.at(times[t]).first.transpose();
    data.values.push_back(std::move(m));
  }

  if (center) {
    Vector mean = Vector::Zero(p);
    for (const Matrix& m : data.values) mean += m.colwise().sum().transpose();
    mean /= static_cast<double>(data.dims.T * data.dims.n_R);
    for (Matrix& m : data.values) m.rowwise() -= mean.transpose();
  }
  data.validate();
  return data;
}

void save_dataset_csv(const Dataset& data, const std::string& path) {
  data.validate();
  std::ostringstream out;
  out << "replicate,time";
  for (const std::string& name : data.gene_names)
    out << ',' << csv_quote(name);
  out << '\n';
  for (int r = 0; r < data.dims.n_R; ++r) {
    for (int t = 0; t < data.dims.T; ++t) {
      out << (r + 1) << ',' << (t + 1);
      for (int j = 0; j < data.dims.p; ++j)
        out << ',' << fmt_g17(data.values[r](t, j));
      out << '\n';
    }
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("dataset csv: cannot write '" + path + "'");
  file << out.str();
  if (!file) throw DataError("dataset csv: write to '" + path + "' failed");
}

}  // namespace netinf
