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

#include <map>
#include <span>
#include <string>
#include <vector>

#include "agp/autodiff/tape.hpp"

namespace agp {

using ad::Tensor;
using ad::Var;

/// Name-ordered collection of tensors: network weights, GP hyperparameters,
/// their gradients, or optimizer moments.
class ParamSet {
 public:
  using Map = std::map<std::string, Tensor>;

  void set(const std::string& name, Tensor value) { tensors_[name] = std::move(value); }
  const Tensor& at(const std::string& name) const;
  Tensor& at(const std::string& name);
  bool contains(const std::string& name) const { return tensors_.count(name) != 0; }
  std::size_t size() const { return tensors_.size(); }
  bool empty() const { return tensors_.empty(); }
  std::size_t numel() const;

  Map::const_iterator begin() const { return tensors_.begin(); }
  Map::const_iterator end() const { return tensors_.end(); }
  Map::iterator begin() { return tensors_.begin(); }
  Map::iterator end() { return tensors_.end(); }

  /// Same names and shapes, all zeros.
  ParamSet zeros_like() const;
  /// Entries of both sets; names must not collide.
  ParamSet merged(const ParamSet& other) const;
  /// Entries whose name starts with `prefix`.
  ParamSet with_prefix(const std::string& prefix) const;

  std::vector<double> flatten() const;
  double squared_norm() const;

  bool operator==(const ParamSet& other) const = default;

 private:
  Map tensors_;
};

/// Tape handles for every entry of a ParamSet.
class BoundParams {
 public:
  /// Binds each tensor as a leaf (trainable) or constant.
  static BoundParams bind(ad::Tape& tape, const ParamSet& params, bool trainable);

  Var operator[](const std::string& name) const;
  bool contains(const std::string& name) const { return vars_.count(name) != 0; }
  /// Adds the entries of `other` (e.g. network and GP blocks on one tape).
  void absorb(const BoundParams& other);

  /// Gradients from the tape's last backward pass, keyed like the ParamSet.
  ParamSet gradients(const ad::Tape& tape) const;

 private:
  std::map<std::string, Var> vars_;
};

}  // namespace agp
