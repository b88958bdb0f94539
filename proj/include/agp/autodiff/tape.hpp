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

#include <cstddef>
#include <functional>
#include <vector>

#include "agp/autodiff/tensor.hpp"

namespace agp::ad {

class Tape;

/// Handle to a node on a tape. Cheap to copy; valid while the tape lives.
struct Var {
  Tape* tape = nullptr;
  std::size_t id = 0;

  const Tensor& value() const;
  std::size_t rows() const { return value().rows(); }
  std::size_t cols() const { return value().cols(); }
};

enum class OpKind {
  kLeaf,
  kConstant,
  kMatMul,
  kTranspose,
  kAdd,
  kSub,
  kMul,
  kScale,
  kAddScalar,
  kRelu,
  kExp,
  kLog,
  kSoftmaxRows,
  kSum,
  kSqDist,
  kConcatRows,
  kConcatCols,
  kSliceRows,
  kSliceCols,
  kCholesky,
  kTriSolve,
  kSumLogDiag,
  kAddScaledIdentity,
  kInterpMatrix,
  kKissQuadForm,
};

/// Append-only record of a forward computation.
///
/// Inputs of a node always precede it, so a single reverse sweep over the
/// node list is a valid topological order. A tape is rebuilt for every
/// forward pass and must not be shared across threads.
class Tape {
 public:
  /// Propagates grad(self) into the gradients of the node's inputs.
  using BackwardFn = std::function<void(Tape&, std::size_t self)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Differentiable input.
  Var leaf(Tensor value);
  /// Input that never receives a gradient.
  Var constant(Tensor value);
  Var record(OpKind kind, Tensor value, std::vector<std::size_t> inputs, BackwardFn backward);

  const Tensor& value(std::size_t id) const { return nodes_.at(id).value; }
  OpKind kind(std::size_t id) const { return nodes_.at(id).kind; }
  const std::vector<std::size_t>& inputs(std::size_t id) const { return nodes_.at(id).inputs; }
  bool requires_grad(std::size_t id) const { return nodes_.at(id).requires_grad; }
  std::size_t size() const { return nodes_.size(); }

  /// Reverse sweep from a single-element loss node.
  void backward(Var loss);

  /// Gradient of the last backward() loss with respect to `v`. Zero-filled
  /// when `v` was not reached.
  Tensor grad(Var v) const;
  bool has_grad(std::size_t id) const { return id < grads_.size() && !grads_[id].shape().empty(); }

  /// Accumulator used by backward rules; lazily zero-initialized.
  Tensor& grad_buffer(std::size_t id);

 private:
  struct Node {
    OpKind kind;
    Tensor value;
    std::vector<std::size_t> inputs;
    BackwardFn backward;
    bool requires_grad;
  };

  std::vector<Node> nodes_;
  std::vector<Tensor> grads_;
};

}  // namespace agp::ad
