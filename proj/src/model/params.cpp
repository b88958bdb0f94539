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

#include "agp/params.hpp"

#include "agp/errors.hpp"

namespace agp {

const Tensor& ParamSet::at(const std::string& name) const {
  auto it = tensors_.find(name);
  if (it == tensors_.end()) throw ContractError("unknown parameter '" + name + "'");
  return it->second;
}

Tensor& ParamSet::at(const std::string& name) {
  auto it = tensors_.find(name);
  if (it == tensors_.end()) throw ContractError("unknown parameter '" + name + "'");
  return it->second;
}

std::size_t ParamSet::numel() const {
  std::size_t n = 0;
  for (const auto& [_, t] : tensors_) n += t.size();
  return n;
}

ParamSet ParamSet::zeros_like() const {
  ParamSet out;
  for (const auto& [name, t] : tensors_) out.set(name, Tensor(t.shape(), 0.0));
  return out;
}

ParamSet ParamSet::merged(const ParamSet& other) const {
  ParamSet out = *this;
  for (const auto& [name, t] : other) {
    if (out.contains(name)) throw ContractError("duplicate parameter '" + name + "'");
    out.set(name, t);
  }
  return out;
}

ParamSet ParamSet::with_prefix(const std::string& prefix) const {
  ParamSet out;
  for (const auto& [name, t] : tensors_) {
    if (name.rfind(prefix, 0) == 0) out.set(name, t);
  }
  return out;
}

std::vector<double> ParamSet::flatten() const {
  std::vector<double> out;
  out.reserve(numel());
  for (const auto& [_, t] : tensors_) out.insert(out.end(), t.data().begin(), t.data().end());
  return out;
}

double ParamSet::squared_norm() const {
  double s = 0.0;
  for (const auto& [_, t] : tensors_)
    for (double v : t.data()) s += v * v;
  return s;
}

BoundParams BoundParams::bind(ad::Tape& tape, const ParamSet& params, bool trainable) {
  BoundParams out;
  for (const auto& [name, t] : params) out.vars_[name] = trainable ? tape.leaf(t) : tape.constant(t);
  return out;
}

Var BoundParams::operator[](const std::string& name) const {
  auto it = vars_.find(name);
  if (it == vars_.end()) throw ContractError("parameter '" + name + "' is not bound");
  return it->second;
}

void BoundParams::absorb(const BoundParams& other) {
  for (const auto& [name, v] : other.vars_) {
    if (!vars_.emplace(name, v).second) throw ContractError("parameter '" + name + "' bound twice");
  }
}

ParamSet BoundParams::gradients(const ad::Tape& tape) const {
  ParamSet out;
  for (const auto& [name, v] : vars_) out.set(name, tape.grad(v));
  return out;
}

}  // namespace agp
