/*
 * Copyright 2026 The agp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "agp/data/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "agp/errors.hpp"

namespace agp::data {
namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cell);
      cell.clear();
    } else if (ch != '\r') {
      cell.push_back(ch);
    }
  }
  out.push_back(cell);
  for (auto& c : out) {
    const auto b = c.find_first_not_of(" \t");
    const auto e = c.find_last_not_of(" \t");
    c = b == std::string::npos ? std::string() : c.substr(b, e - b + 1);
  }
  return out;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name, const std::string& path) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw DataError(path + ": missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

double parse_cell(const std::string& cell, std::size_t line, const std::string& column, const std::string& path) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size() || errno == ERANGE || !std::isfinite(v)) {
    throw DataError(path + ": non-numeric value '" + cell + "' in column '" + column + "' at line " +
                    std::to_string(line));
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DatasetSplits load_csv(const std::string& path, const std::vector<std::string>& input_cols,
                       const std::string& target_col, std::size_t length) {
  if (length == 0) throw ContractError("load_csv: window length must be positive");
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file, header row required");
  const auto header = split_line(line);
  std::vector<std::size_t> cols;
  for (const auto& name : input_cols) cols.push_back(column_index(header, name, path));
  const std::size_t tcol = column_index(header, target_col, path);

  std::vector<std::vector<double>> inputs;
  std::vector<double> targets;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_line(line);
    if (cells.size() != header.size()) {
      throw DataError(path + ": line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                      " cells, header has " + std::to_string(header.size()));
    }
    std::vector<double> row;
    for (std::size_t k = 0; k < cols.size(); ++k) row.push_back(parse_cell(cells[cols[k]], line_no, input_cols[k], path));
    inputs.push_back(std::move(row));
    targets.push_back(parse_cell(cells[tcol], line_no, target_col, path));
  }
  if (targets.size() < length) {
    throw DataError(path + ": " + std::to_string(targets.size()) + " data rows, need at least " +
                    std::to_string(length));
  }
  return chronological_split(window_series(inputs, targets, length, Split::kTrain));
}

void write_csv(const std::string& path, const DatasetSplits& splits, const std::vector<std::string>& input_cols,
               const std::string& target_col) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& c : input_cols) out << c << ',';
  out << target_col << '\n';
  for (const SequenceDataset* ds : {&splits.train, &splits.test}) {
    if (!ds->empty() && ds->input_dim() != input_cols.size()) {
      throw ContractError("write_csv: column names do not match input width");
    }
    for (std::size_t s = 0; s < ds->size(); ++s) {
      for (std::size_t t = 0; t < ds->length(); ++t) {
        for (std::size_t c = 0; c < input_cols.size(); ++c) out << format_double(ds->inputs[s](t, c)) << ',';
        out << format_double(ds->targets[s](t, 0)) << '\n';
      }
    }
  }
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace agp::data
