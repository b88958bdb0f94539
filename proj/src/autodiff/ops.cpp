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

#include "agp/autodiff/ops.hpp"

#include <algorithm>
#include <cmath>

#include "agp/errors.hpp"

namespace agp::ad {
namespace {

void require_matrix(const Tensor& t, const char* op) {
  if (!t.is_matrix()) throw ShapeError(std::string(op) + ": expected a matrix, got " + shape_string(t.shape()));
}

enum class Broadcast { kNone, kRow };

Broadcast check_binary(const Tensor& a, const Tensor& b, const char* op) {
  require_matrix(a, op);
  require_matrix(b, op);
  if (a.shape() == b.shape()) return Broadcast::kNone;
  if (b.rows() == 1 && b.cols() == a.cols()) return Broadcast::kRow;
  throw ShapeError(std::string(op) + ": shape mismatch " + shape_string(a.shape()) + " vs " +
                   shape_string(b.shape()));
}

// Reduce a full-size gradient back onto the (possibly broadcast) operand.
void accumulate_broadcast(Tensor& target, const Tensor& g, Broadcast mode) {
  if (mode == Broadcast::kNone) {
    target.mat() += g.mat();
  } else {
    target.mat() += g.mat().colwise().sum();
  }
}

template <typename F>
Tensor map_values(const Tensor& a, F f) {
  Tensor out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i]);
  return out;
}

}  // namespace

Var matmul(Var a, Var b) {
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  require_matrix(av, "matmul");
  require_matrix(bv, "matmul");
  if (av.cols() != bv.rows()) {
    throw ShapeError("matmul: inner dimensions disagree for " + shape_string(av.shape()) + " x " +
                     shape_string(bv.shape()));
  }
  Tensor out({av.rows(), bv.cols()});
  out.mat().noalias() = av.mat() * bv.mat();
  return a.tape->record(OpKind::kMatMul, std::move(out), {a.id, b.id}, [a, b](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    if (t.requires_grad(a.id)) t.grad_buffer(a.id).mat().noalias() += g.mat() * t.value(b.id).mat().transpose();
    if (t.requires_grad(b.id)) t.grad_buffer(b.id).mat().noalias() += t.value(a.id).mat().transpose() * g.mat();
  });
}

Var transpose(Var a) {
  require_matrix(a.value(), "transpose");
  return a.tape->record(OpKind::kTranspose, a.value().transposed(), {a.id}, [a](Tape& t, std::size_t self) {
    t.grad_buffer(a.id).mat() += t.grad_buffer(self).mat().transpose();
  });
}

Var add(Var a, Var b) {
  const Broadcast mode = check_binary(a.value(), b.value(), "add");
  Tensor out = a.value();
  if (mode == Broadcast::kNone) {
    out.mat() += b.value().mat();
  } else {
    out.mat().rowwise() += b.value().mat().row(0);
  }
  return a.tape->record(OpKind::kAdd, std::move(out), {a.id, b.id}, [a, b, mode](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    if (t.requires_grad(a.id)) t.grad_buffer(a.id).mat() += g.mat();
    if (t.requires_grad(b.id)) accumulate_broadcast(t.grad_buffer(b.id), g, mode);
  });
}

Var sub(Var a, Var b) {
  const Broadcast mode = check_binary(a.value(), b.value(), "sub");
  Tensor out = a.value();
  if (mode == Broadcast::kNone) {
    out.mat() -= b.value().mat();
  } else {
    out.mat().rowwise() -= b.value().mat().row(0);
  }
  return a.tape->record(OpKind::kSub, std::move(out), {a.id, b.id}, [a, b, mode](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    if (t.requires_grad(a.id)) t.grad_buffer(a.id).mat() += g.mat();
    if (t.requires_grad(b.id)) {
      Tensor neg = g;
      neg.mat() *= -1.0;
      accumulate_broadcast(t.grad_buffer(b.id), neg, mode);
    }
  });
}

Var mul(Var a, Var b) {
  const Broadcast mode = check_binary(a.value(), b.value(), "mul");
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  Tensor out = av;
  if (mode == Broadcast::kNone) {
    out.mat().array() *= bv.mat().array();
  } else {
    out.mat().array().rowwise() *= bv.mat().row(0).array();
  }
  return a.tape->record(OpKind::kMul, std::move(out), {a.id, b.id}, [a, b, mode](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    const Tensor& av = t.value(a.id);
    const Tensor& bv = t.value(b.id);
    if (t.requires_grad(a.id)) {
      if (mode == Broadcast::kNone) {
        t.grad_buffer(a.id).mat().array() += g.mat().array() * bv.mat().array();
      } else {
        t.grad_buffer(a.id).mat().array() += g.mat().array().rowwise() * bv.mat().row(0).array();
      }
    }
    if (t.requires_grad(b.id)) {
      Tensor ga = g;
      ga.mat().array() *= av.mat().array();
      accumulate_broadcast(t.grad_buffer(b.id), ga, mode);
    }
  });
}

Var scale(Var a, double factor) {
  require_matrix(a.value(), "scale");
  Tensor out = a.value();
  out.mat() *= factor;
  return a.tape->record(OpKind::kScale, std::move(out), {a.id}, [a, factor](Tape& t, std::size_t self) {
    t.grad_buffer(a.id).mat() += factor * t.grad_buffer(self).mat();
  });
}

Var add_scalar(Var a, double offset) {
  require_matrix(a.value(), "add_scalar");
  Tensor out = a.value();
  out.mat().array() += offset;
  return a.tape->record(OpKind::kAddScalar, std::move(out), {a.id}, [a](Tape& t, std::size_t self) {
    t.grad_buffer(a.id).mat() += t.grad_buffer(self).mat();
  });
}

Var relu(Var a) {
  require_matrix(a.value(), "relu");
  Tensor out = map_values(a.value(), [](double v) { return v > 0.0 ? v : 0.0; });
  return a.tape->record(OpKind::kRelu, std::move(out), {a.id}, [a](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    const Tensor& x = t.value(a.id);
    Tensor& ga = t.grad_buffer(a.id);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] > 0.0) ga[i] += g[i];
    }
  });
}

Var exp(Var a) {
  require_matrix(a.value(), "exp");
  Tensor out = map_values(a.value(), [](double v) { return std::exp(v); });
  return a.tape->record(OpKind::kExp, std::move(out), {a.id}, [a](Tape& t, std::size_t self) {
    t.grad_buffer(a.id).mat().array() += t.grad_buffer(self).mat().array() * t.value(self).mat().array();
  });
}

Var log(Var a) {
  require_matrix(a.value(), "log");
  for (double v : a.value().data()) {
    if (!(v > 0.0)) throw DomainError("log of non-positive value " + std::to_string(v));
  }
  Tensor out = map_values(a.value(), [](double v) { return std::log(v); });
  return a.tape->record(OpKind::kLog, std::move(out), {a.id}, [a](Tape& t, std::size_t self) {
    t.grad_buffer(a.id).mat().array() += t.grad_buffer(self).mat().array() / t.value(a.id).mat().array();
  });
}

Var softmax_rows(Var a) {
  const Tensor& x = a.value();
  require_matrix(x, "softmax_rows");
  Tensor out(x.shape());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double m = x(i, 0);
    for (std::size_t j = 1; j < x.cols(); ++j) m = std::max(m, x(i, j));
    double z = 0.0;
    for (std::size_t j = 0; j < x.cols(); ++j) {
      out(i, j) = std::exp(x(i, j) - m);
      z += out(i, j);
    }
    for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) /= z;
  }
  return a.tape->record(OpKind::kSoftmaxRows, std::move(out), {a.id}, [a](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    const Tensor& s = t.value(self);
    Tensor& ga = t.grad_buffer(a.id);
    for (std::size_t i = 0; i < s.rows(); ++i) {
      double dot = 0.0;
      for (std::size_t j = 0; j < s.cols(); ++j) dot += g(i, j) * s(i, j);
      for (std::size_t j = 0; j < s.cols(); ++j) ga(i, j) += s(i, j) * (g(i, j) - dot);
    }
  });
}

Var sum(Var a) {
  require_matrix(a.value(), "sum");
  double total = 0.0;
  for (double v : a.value().data()) total += v;
  return a.tape->record(OpKind::kSum, Tensor::scalar(total), {a.id}, [a](Tape& t, std::size_t self) {
    t.grad_buffer(a.id).mat().array() += t.grad_buffer(self).item();
  });
}

Var sq_dist(Var a, Var b) {
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  require_matrix(av, "sq_dist");
  require_matrix(bv, "sq_dist");
  if (av.cols() != bv.cols()) {
    throw ShapeError("sq_dist: feature widths differ " + shape_string(av.shape()) + " vs " + shape_string(bv.shape()));
  }
  const std::size_t n = av.rows(), m = bv.rows(), f = av.cols();
  Tensor out({n, m});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < f; ++k) {
        const double d = av(i, k) - bv(j, k);
        d2 += d * d;
      }
      out(i, j) = d2;
    }
  }
  return a.tape->record(OpKind::kSqDist, std::move(out), {a.id, b.id}, [a, b](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    const Tensor& av = t.value(a.id);
    const Tensor& bv = t.value(b.id);
    // d/da_i = 2 sum_j g_ij (a_i - b_j); d/db_j = -2 sum_i g_ij (a_i - b_j)
    if (t.requires_grad(a.id)) {
      Tensor& ga = t.grad_buffer(a.id);
      const Eigen::VectorXd rs = g.mat().rowwise().sum();
      ga.mat() += 2.0 * (rs.asDiagonal() * av.mat() - g.mat() * bv.mat());
    }
    if (t.requires_grad(b.id)) {
      Tensor& gb = t.grad_buffer(b.id);
      const Eigen::VectorXd cs = g.mat().colwise().sum().transpose();
      gb.mat() += 2.0 * (cs.asDiagonal() * bv.mat() - g.mat().transpose() * av.mat());
    }
  });
}

Var concat_rows(std::span<const Var> parts) {
  if (parts.empty()) throw ShapeError("concat_rows: no inputs");
  const std::size_t cols = parts[0].value().cols();
  std::size_t rows = 0;
  std::vector<std::size_t> ids;
  for (const Var& p : parts) {
    if (p.value().cols() != cols) throw ShapeError("concat_rows: column counts differ");
    rows += p.value().rows();
    ids.push_back(p.id);
  }
  Tensor out({rows, cols});
  std::size_t r = 0;
  for (const Var& p : parts) {
    out.mat().middleRows(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(p.rows())) = p.value().mat();
    r += p.rows();
  }
  return parts[0].tape->record(OpKind::kConcatRows, std::move(out), ids, [ids](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    std::size_t r = 0;
    for (std::size_t id : ids) {
      const auto n = static_cast<Eigen::Index>(t.value(id).rows());
      if (t.requires_grad(id)) t.grad_buffer(id).mat() += g.mat().middleRows(static_cast<Eigen::Index>(r), n);
      r += static_cast<std::size_t>(n);
    }
  });
}

Var concat_cols(std::span<const Var> parts) {
  if (parts.empty()) throw ShapeError("concat_cols: no inputs");
  const std::size_t rows = parts[0].value().rows();
  std::size_t cols = 0;
  std::vector<std::size_t> ids;
  for (const Var& p : parts) {
    if (p.value().rows() != rows) throw ShapeError("concat_cols: row counts differ");
    cols += p.value().cols();
    ids.push_back(p.id);
  }
  Tensor out({rows, cols});
  std::size_t c = 0;
  for (const Var& p : parts) {
    out.mat().middleCols(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(p.cols())) = p.value().mat();
    c += p.cols();
  }
  return parts[0].tape->record(OpKind::kConcatCols, std::move(out), ids, [ids](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    std::size_t c = 0;
    for (std::size_t id : ids) {
      const auto n = static_cast<Eigen::Index>(t.value(id).cols());
      if (t.requires_grad(id)) t.grad_buffer(id).mat() += g.mat().middleCols(static_cast<Eigen::Index>(c), n);
      c += static_cast<std::size_t>(n);
    }
  });
}

Var slice_rows(Var a, std::size_t begin, std::size_t end) {
  const Tensor& av = a.value();
  require_matrix(av, "slice_rows");
  if (begin > end || end > av.rows()) throw ShapeError("slice_rows: range out of bounds for " + shape_string(av.shape()));
  const auto b = static_cast<Eigen::Index>(begin), n = static_cast<Eigen::Index>(end - begin);
  Tensor out({end - begin, av.cols()});
  out.mat() = av.mat().middleRows(b, n);
  return a.tape->record(OpKind::kSliceRows, std::move(out), {a.id}, [a, b, n](Tape& t, std::size_t self) {
    t.grad_buffer(a.id).mat().middleRows(b, n) += t.grad_buffer(self).mat();
  });
}

Var slice_cols(Var a, std::size_t begin, std::size_t end) {
  const Tensor& av = a.value();
  require_matrix(av, "slice_cols");
  if (begin > end || end > av.cols()) throw ShapeError("slice_cols: range out of bounds for " + shape_string(av.shape()));
  const auto b = static_cast<Eigen::Index>(begin), n = static_cast<Eigen::Index>(end - begin);
  Tensor out({av.rows(), end - begin});
  out.mat() = av.mat().middleCols(b, n);
  return a.tape->record(OpKind::kSliceCols, std::move(out), {a.id}, [a, b, n](Tape& t, std::size_t self) {
    t.grad_buffer(a.id).mat().middleCols(b, n) += t.grad_buffer(self).mat();
  });
}

Var elementwise(Var a, std::optional<Var> b, Elementwise kind, double factor) {
  auto need_b = [&]() -> Var {
    if (!b) throw ContractError("elementwise: binary kind requires a second operand");
    return *b;
  };
  switch (kind) {
    case Elementwise::kAdd: return add(a, need_b());
    case Elementwise::kSub: return sub(a, need_b());
    case Elementwise::kMul: return mul(a, need_b());
    case Elementwise::kScale: return scale(a, factor);
    case Elementwise::kRelu: return relu(a);
    case Elementwise::kExp: return exp(a);
    case Elementwise::kLog: return log(a);
  }
  throw ContractError("elementwise: unknown kind");
}

}  // namespace agp::ad
