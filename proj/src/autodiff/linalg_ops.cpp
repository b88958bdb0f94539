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

#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>

#include "agp/autodiff/linalg.hpp"
#include "agp/errors.hpp"

namespace agp::ad {
namespace {

bool try_llt(const RowMatrix& a, double jitter, RowMatrix& l) {
  RowMatrix shifted = a;
  shifted.diagonal().array() += jitter;
  Eigen::LLT<RowMatrix> llt(shifted);
  if (llt.info() != Eigen::Success) return false;
  l = llt.matrixL();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    if (!(l(i, i) > 0.0) || !std::isfinite(l(i, i))) return false;
  }
  return true;
}

// Lower triangle with the diagonal halved.
RowMatrix phi(const RowMatrix& x) {
  RowMatrix out = x.triangularView<Eigen::Lower>();
  out.diagonal() *= 0.5;
  return out;
}

}  // namespace

double cholesky_factor(const RowMatrix& a, RowMatrix& l, const JitterPolicy& policy) {
  if (a.rows() != a.cols()) throw ShapeError("cholesky: matrix is not square");
  if (try_llt(a, 0.0, l)) return 0.0;
  double jitter = policy.initial;
  double last = 0.0;
  while (jitter <= policy.max * (1.0 + 1e-12)) {
    last = jitter;
    if (try_llt(a, jitter, l)) return jitter;
    jitter *= policy.factor;
  }
  std::ostringstream os;
  os << "cholesky: matrix not positive definite after jitter escalation (final jitter " << last << ")";
  throw ConditioningError(os.str());
}

CholeskyResult cholesky(Var a, const JitterPolicy& policy) {
  const Tensor& av = a.value();
  if (!av.is_matrix() || av.rows() != av.cols()) {
    throw ShapeError("cholesky: expected a square matrix, got " + shape_string(av.shape()));
  }
  const RowMatrix sym = 0.5 * (av.mat() + av.mat().transpose());
  RowMatrix l;
  const double jitter = cholesky_factor(sym, l, policy);
  Var out = a.tape->record(OpKind::kCholesky, Tensor::from_eigen(l), {a.id}, [a](Tape& t, std::size_t self) {
    const ConstMatrixMap lmat = t.value(self).mat();
    const RowMatrix lbar = t.grad_buffer(self).mat().triangularView<Eigen::Lower>();
    const RowMatrix p = phi(lmat.transpose() * lbar);
    // S = L^{-T} P L^{-1}
    const RowMatrix y = lmat.transpose().triangularView<Eigen::Upper>().solve(p);
    const RowMatrix s = lmat.transpose().triangularView<Eigen::Upper>().solve(y.transpose()).transpose();
    t.grad_buffer(a.id).mat() += 0.5 * (s + s.transpose());
  });
  return {out, jitter};
}

Var tri_solve_lower(Var l, Var b) {
  const Tensor& lv = l.value();
  const Tensor& bv = b.value();
  if (!lv.is_matrix() || lv.rows() != lv.cols()) throw ShapeError("tri_solve_lower: factor must be square");
  if (!bv.is_matrix() || bv.rows() != lv.rows()) {
    throw ShapeError("tri_solve_lower: " + shape_string(lv.shape()) + " vs rhs " + shape_string(bv.shape()));
  }
  RowMatrix x = lv.mat().triangularView<Eigen::Lower>().solve(bv.mat());
  return l.tape->record(OpKind::kTriSolve, Tensor::from_eigen(x), {l.id, b.id}, [l, b](Tape& t, std::size_t self) {
    const ConstMatrixMap lmat = t.value(l.id).mat();
    const ConstMatrixMap xmat = t.value(self).mat();
    const RowMatrix bbar = lmat.transpose().triangularView<Eigen::Upper>().solve(t.grad_buffer(self).mat());
    if (t.requires_grad(b.id)) t.grad_buffer(b.id).mat() += bbar;
    if (t.requires_grad(l.id)) {
      const RowMatrix lbar = -(bbar * xmat.transpose());
      t.grad_buffer(l.id).mat() += RowMatrix(lbar.triangularView<Eigen::Lower>());
    }
  });
}

Var sum_log_diag(Var l) {
  const Tensor& lv = l.value();
  if (!lv.is_matrix() || lv.rows() != lv.cols()) throw ShapeError("sum_log_diag: expected a square matrix");
  double total = 0.0;
  for (std::size_t i = 0; i < lv.rows(); ++i) {
    if (!(lv(i, i) > 0.0)) throw DomainError("sum_log_diag: non-positive diagonal entry");
    total += std::log(lv(i, i));
  }
  return l.tape->record(OpKind::kSumLogDiag, Tensor::scalar(total), {l.id}, [l](Tape& t, std::size_t self) {
    const double g = t.grad_buffer(self).item();
    const Tensor& lv = t.value(l.id);
    Tensor& gl = t.grad_buffer(l.id);
    for (std::size_t i = 0; i < lv.rows(); ++i) gl(i, i) += g / lv(i, i);
  });
}

Var add_scaled_identity(Var a, Var s) {
  const Tensor& av = a.value();
  if (!av.is_matrix() || av.rows() != av.cols()) throw ShapeError("add_scaled_identity: expected a square matrix");
  if (s.value().size() != 1) throw ShapeError("add_scaled_identity: scale must be 1 x 1");
  Tensor out = av;
  const double sv = s.value().item();
  for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) += sv;
  return a.tape->record(OpKind::kAddScaledIdentity, std::move(out), {a.id, s.id}, [a, s](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    if (t.requires_grad(a.id)) t.grad_buffer(a.id).mat() += g.mat();
    if (t.requires_grad(s.id)) t.grad_buffer(s.id)[0] += g.mat().trace();
  });
}

}  // namespace agp::ad
