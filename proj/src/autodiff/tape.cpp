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

#include "agp/autodiff/tape.hpp"

#include "agp/errors.hpp"

namespace agp::ad {

const Tensor& Var::value() const { return tape->value(id); }

Var Tape::leaf(Tensor value) {
  nodes_.push_back({OpKind::kLeaf, std::move(value), {}, nullptr, true});
  return {this, nodes_.size() - 1};
}

Var Tape::constant(Tensor value) {
  nodes_.push_back({OpKind::kConstant, std::move(value), {}, nullptr, false});
  return {this, nodes_.size() - 1};
}

Var Tape::record(OpKind kind, Tensor value, std::vector<std::size_t> inputs, BackwardFn backward) {
  bool needs = false;
  for (std::size_t in : inputs) {
    if (in >= nodes_.size()) throw ContractError("tape input refers to a future node");
    needs = needs || nodes_[in].requires_grad;
  }
  if (!value.all_finite()) {
    throw DomainError("non-finite value produced by tape op " + std::to_string(static_cast<int>(kind)));
  }
  nodes_.push_back({kind, std::move(value), std::move(inputs), needs ? std::move(backward) : nullptr, needs});
  return {this, nodes_.size() - 1};
}

void Tape::backward(Var loss) {
  if (loss.tape != this) throw ContractError("backward: loss belongs to another tape");
  const Tensor& lv = value(loss.id);
  if (lv.size() != 1) throw ContractError("backward: loss must be scalar, got shape " + shape_string(lv.shape()));
  grads_.assign(nodes_.size(), Tensor());
  grads_[loss.id] = Tensor(lv.shape(), 1.0);
  for (std::size_t i = loss.id + 1; i-- > 0;) {
    const Node& n = nodes_[i];
    if (!n.backward || !has_grad(i)) continue;
    n.backward(*this, i);
  }
}

Tensor Tape::grad(Var v) const {
  if (has_grad(v.id)) return grads_[v.id];
  return Tensor(value(v.id).shape(), 0.0);
}

Tensor& Tape::grad_buffer(std::size_t id) {
  if (grads_.size() < nodes_.size()) grads_.resize(nodes_.size());
  if (grads_[id].shape().empty()) grads_[id] = Tensor(nodes_[id].value.shape(), 0.0);
  return grads_[id];
}

}  // namespace agp::ad
