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

#include <json.hpp>

#include "agp/params.hpp"

namespace agp::model {

/// Checkpoint container.
///
/// Layout (all integers little-endian):
///   bytes [0, 8)    magic "AGPCKPT1"
///   bytes [8, 16)   uint64 header length H
///   bytes [16, 16+H) UTF-8 JSON header:
///       {"format": 1, "meta": {...},
///        "tensors": [{"name": str, "shape": [..], "offset": bytes}, ...]}
///   then the payload: IEEE-754 binary64 values, row-major, one array per
///   tensor at `offset` bytes from the start of the payload.
/// Tensors are written in name order, so saving the same content twice
/// yields identical bytes.
struct Checkpoint {
  ParamSet tensors;
  nlohmann::json meta = nlohmann::json::object();
};

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
/// Throws IoError when the file cannot be read and DataError on a malformed
/// container.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace agp::model
