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

#pragma once

#include <string>
#include <vector>

#include "agp/data/dataset.hpp"

namespace agp::data {

/// Reads a headed, comma-separated file and cuts the selected columns into
/// non-overlapping windows of length L, split 80/20 chronologically.
/// Throws IoError when the file cannot be opened and DataError for a missing
/// column, a non-numeric cell (reported with its 1-based line number) or
/// fewer than L data rows.
DatasetSplits load_csv(const std::string& path, const std::vector<std::string>& input_cols,
                       const std::string& target_col, std::size_t length);

/// Writes train windows followed by test windows as one series, so that
/// load_csv with the same column names and L restores the same splits.
void write_csv(const std::string& path, const DatasetSplits& splits, const std::vector<std::string>& input_cols,
               const std::string& target_col);

/// Number formatting shared by every CSV export: shortest form that
/// round-trips a double (%.17g).
std::string format_double(double v);

}  // namespace agp::data
