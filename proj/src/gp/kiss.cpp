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

#include "agp/gp/kiss.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "agp/autodiff/ops.hpp"
#include "agp/errors.hpp"

namespace agp::gp {
namespace {

// Cell of one coordinate along one axis.
struct AxisCell {
  std::size_t lower;  // index of the lower node
  double t;           // position inside the cell, in [0, 1]
  double spacing;
  bool clamped;
};

AxisCell locate(const std::vector<double>& axis, double x) {
  const std::size_t n = axis.size();
  const double lo = axis.front(), hi = axis.back();
  const double h = (hi - lo) / static_cast<double>(n - 1);
  bool clamped = false;
  if (x < lo) {
    x = lo;
    clamped = true;
  } else if (x > hi) {
    x = hi;
    clamped = true;
  }
  const double pos = (x - lo) / h;
  auto j = static_cast<std::size_t>(std::floor(pos));
  j = std::min(j, n - 2);
  const double t = std::clamp(pos - static_cast<double>(j), 0.0, 1.0);
  return {j, t, h, clamped};
}

struct RowCorners {
  std::vector<std::size_t> cols;
  std::vector<double> weights;
  std::vector<double> dweights;  // corners x F, d w_c / d x_d
};

RowCorners corners(const InducingGrid& grid, std::span<const double> x, std::size_t& clamped) {
  const std::size_t f = grid.dim();
  std::vector<AxisCell> cells(f);
  for (std::size_t d = 0; d < f; ++d) {
    cells[d] = locate(grid.axes[d], x[d]);
    if (cells[d].clamped) ++clamped;
  }
  std::vector<std::size_t> strides(f, 1);
  for (std::size_t d = f; d-- > 1;) strides[d - 1] = strides[d] * grid.axes[d].size();

  const std::size_t nc = std::size_t{1} << f;
  RowCorners rc;
  rc.cols.resize(nc);
  rc.weights.resize(nc);
  rc.dweights.assign(nc * f, 0.0);
  for (std::size_t c = 0; c < nc; ++c) {
    std::size_t col = 0;
    double w = 1.0;
    for (std::size_t d = 0; d < f; ++d) {
      const bool upper = (c >> d) & 1u;
      col += (cells[d].lower + (upper ? 1 : 0)) * strides[d];
      w *= upper ? cells[d].t : 1.0 - cells[d].t;
    }
    rc.cols[c] = col;
    rc.weights[c] = w;
    for (std::size_t d = 0; d < f; ++d) {
      if (cells[d].clamped) continue;
      double dw = 1.0 / cells[d].spacing;
      if (!((c >> d) & 1u)) dw = -dw;
      for (std::size_t e = 0; e < f; ++e) {
        if (e == d) continue;
        dw *= ((c >> e) & 1u) ? cells[e].t : 1.0 - cells[e].t;
      }
      rc.dweights[c * f + d] = dw;
    }
  }
  return rc;
}

InterpolationMatrix sparse_from_dense(const Tensor& s) {
  InterpolationMatrix m;
  m.rows = s.rows();
  m.cols = s.cols();
  m.row_ptr.push_back(0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (s(i, j) != 0.0) {
        m.col_idx.push_back(j);
        m.values.push_back(s(i, j));
      }
    }
    m.row_ptr.push_back(m.col_idx.size());
  }
  return m;
}

std::vector<double> kiss_apply(const InterpolationMatrix& s, const ad::RowMatrix& kuu, double noise,
                               std::span<const double> v) {
  const std::vector<double> stv = s.apply_transpose(v);
  const Eigen::VectorXd kv = kuu * Eigen::Map<const Eigen::VectorXd>(stv.data(), static_cast<Eigen::Index>(stv.size()));
  std::vector<double> out = s.apply(std::span<const double>(kv.data(), static_cast<std::size_t>(kv.size())));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += noise * v[i];
  return out;
}

Eigen::VectorXd conjugate_gradient(const InterpolationMatrix& s, const ad::RowMatrix& kuu, double noise,
                                   const Eigen::VectorXd& b, const CgOptions& opts) {
  const std::size_t n = static_cast<std::size_t>(b.size());
  const std::size_t max_iter = opts.max_iter ? opts.max_iter : std::max<std::size_t>(2 * n, 1000);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
  Eigen::VectorXd r = b;
  Eigen::VectorXd p = r;
  double rr = r.squaredNorm();
  const double target = opts.rel_tol * b.norm();
  if (std::sqrt(rr) <= target) return x;
  for (std::size_t it = 0; it < max_iter; ++it) {
    const std::vector<double> ap_v = kiss_apply(s, kuu, noise, std::span<const double>(p.data(), n));
    const Eigen::Map<const Eigen::VectorXd> ap(ap_v.data(), static_cast<Eigen::Index>(n));
    const double alpha = rr / p.dot(ap);
    x += alpha * p;
    r -= alpha * ap;
    const double rr_next = r.squaredNorm();
    if (std::sqrt(rr_next) <= target) return x;
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  std::ostringstream os;
  os << "kiss: conjugate gradients did not converge in " << max_iter << " iterations (residual norm "
     << std::sqrt(rr) << ", target " << target << ")";
  throw ConditioningError(os.str());
}

}  // namespace

InducingGrid InducingGrid::build(const Tensor& features, std::size_t u, double margin) {
  const std::size_t f = features.cols();
  if (f == 0 || f > kMaxKissDim) {
    throw ConfigError("kiss: feature width " + std::to_string(f) + " exceeds the grid budget (max " +
                      std::to_string(kMaxKissDim) + ")");
  }
  if (u < 2) throw ConfigError("kiss: at least 2 inducing points are required");
  if (features.rows() == 0) throw ContractError("kiss: no features to place a grid around");
  auto per_axis = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(u), 1.0 / static_cast<double>(f)) + 1e-9));
  per_axis = std::max<std::size_t>(per_axis, 2);

  InducingGrid grid;
  grid.axes.resize(f);
  for (std::size_t d = 0; d < f; ++d) {
    double lo = features(0, d), hi = features(0, d);
    for (std::size_t i = 1; i < features.rows(); ++i) {
      lo = std::min(lo, features(i, d));
      hi = std::max(hi, features(i, d));
    }
    const double extent = hi - lo;
    const double pad = extent > 0.0 ? margin * extent : 0.5;
    lo -= pad;
    hi += pad;
    auto& axis = grid.axes[d];
    axis.resize(per_axis);
    for (std::size_t k = 0; k < per_axis; ++k) {
      axis[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(per_axis - 1);
    }
  }

  std::size_t total = 1;
  for (const auto& a : grid.axes) total *= a.size();
  grid.points = Tensor({total, f});
  for (std::size_t p = 0; p < total; ++p) {
    std::size_t rem = p;
    for (std::size_t d = f; d-- > 0;) {
      grid.points(p, d) = grid.axes[d][rem % grid.axes[d].size()];
      rem /= grid.axes[d].size();
    }
  }
  return grid;
}

Tensor InducingGrid::kuu(const GPHyperparams& theta) const { return kernel_matrix(points, points, theta); }

Tensor InterpolationMatrix::dense() const {
  Tensor out({rows, cols});
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) out(i, col_idx[k]) += values[k];
  return out;
}

std::vector<double> InterpolationMatrix::apply(std::span<const double> v) const {
  if (v.size() != cols) throw ShapeError("InterpolationMatrix::apply: vector length mismatch");
  std::vector<double> out(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) out[i] += values[k] * v[col_idx[k]];
  return out;
}

std::vector<double> InterpolationMatrix::apply_transpose(std::span<const double> v) const {
  if (v.size() != rows) throw ShapeError("InterpolationMatrix::apply_transpose: vector length mismatch");
  std::vector<double> out(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) out[col_idx[k]] += values[k] * v[i];
  return out;
}

InterpolationMatrix kiss_weights(const Tensor& features, const InducingGrid& grid) {
  if (features.cols() != grid.dim()) throw ShapeError("kiss_weights: feature width does not match the grid");
  InterpolationMatrix m;
  m.rows = features.rows();
  m.cols = grid.size();
  m.row_ptr.push_back(0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    const RowCorners rc = corners(grid, features.row_span(i), m.clamped);
    for (std::size_t c = 0; c < rc.cols.size(); ++c) {
      if (rc.weights[c] == 0.0) continue;
      m.col_idx.push_back(rc.cols[c]);
      m.values.push_back(rc.weights[c]);
    }
    m.row_ptr.push_back(m.col_idx.size());
  }
  return m;
}

Tensor kiss_matvec(const InterpolationMatrix& s, const Tensor& kuu, double noise, const Tensor& v) {
  if (v.size() != s.rows) throw ShapeError("kiss_matvec: vector length mismatch");
  const ad::RowMatrix k = kuu.mat();
  const std::vector<double> out = kiss_apply(s, k, noise, v.data());
  return Tensor({out.size(), 1}, out);
}

Var interp_matrix(Var features, const InducingGrid& grid, std::size_t* clamped) {
  const Tensor& x = features.value();
  if (x.cols() != grid.dim()) throw ShapeError("interp_matrix: feature width does not match the grid");
  const std::size_t n = x.rows(), f = grid.dim();
  Tensor s({n, grid.size()});
  std::vector<RowCorners> saved;
  saved.reserve(n);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    saved.push_back(corners(grid, x.row_span(i), count));
    const RowCorners& rc = saved.back();
    for (std::size_t c = 0; c < rc.cols.size(); ++c) s(i, rc.cols[c]) += rc.weights[c];
  }
  if (clamped) *clamped += count;
  return features.tape->record(ad::OpKind::kInterpMatrix, std::move(s), {features.id},
                               [features, saved = std::move(saved), f](ad::Tape& t, std::size_t self) {
                                 const Tensor& g = t.grad_buffer(self);
                                 Tensor& gx = t.grad_buffer(features.id);
                                 for (std::size_t i = 0; i < saved.size(); ++i) {
                                   const RowCorners& rc = saved[i];
                                   for (std::size_t c = 0; c < rc.cols.size(); ++c) {
                                     const double gi = g(i, rc.cols[c]);
                                     if (gi == 0.0) continue;
                                     for (std::size_t d = 0; d < f; ++d) gx(i, d) += gi * rc.dweights[c * f + d];
                                   }
                                 }
                               });
}

Var kiss_quad_form(Var s, Var kuu, Var noise, Var targets, const CgOptions& cg) {
  const Tensor& sv = s.value();
  const Tensor& kv = kuu.value();
  const Tensor& yv = targets.value();
  if (kv.rows() != sv.cols() || kv.cols() != sv.cols()) throw ShapeError("kiss_quad_form: K_UU does not match S");
  if (yv.rows() != sv.rows() || yv.cols() != 1) throw ShapeError("kiss_quad_form: targets must be N x 1");
  if (noise.value().size() != 1) throw ShapeError("kiss_quad_form: noise must be 1 x 1");

  const InterpolationMatrix sparse = sparse_from_dense(sv);
  const ad::RowMatrix k = kv.mat();
  const Eigen::VectorXd y = yv.mat().col(0);
  const Eigen::VectorXd alpha = conjugate_gradient(sparse, k, noise.value().item(), y, cg);
  const double value = 0.5 * y.dot(alpha);

  return s.tape->record(
      ad::OpKind::kKissQuadForm, Tensor::scalar(value), {s.id, kuu.id, noise.id, targets.id},
      [s, kuu, noise, targets, alpha](ad::Tape& t, std::size_t self) {
        const double g = t.grad_buffer(self).item();
        const ad::ConstMatrixMap smat = t.value(s.id).mat();
        const Eigen::VectorXd st_alpha = smat.transpose() * alpha;
        if (t.requires_grad(targets.id)) t.grad_buffer(targets.id).mat().col(0) += g * alpha;
        if (t.requires_grad(noise.id)) t.grad_buffer(noise.id)[0] += -0.5 * g * alpha.squaredNorm();
        if (t.requires_grad(kuu.id)) t.grad_buffer(kuu.id).mat() += -0.5 * g * st_alpha * st_alpha.transpose();
        if (t.requires_grad(s.id)) {
          const ad::ConstMatrixMap kmat = t.value(kuu.id).mat();
          const Eigen::RowVectorXd r = (0.5 * (kmat + kmat.transpose()) * st_alpha).transpose();
          t.grad_buffer(s.id).mat() += -g * alpha * r;
        }
      });
}

Var kiss_nll(Var features, Var targets, const HyperVars& theta, const InducingGrid& grid, const CgOptions& cg,
             KissStats* stats) {
  const std::size_t n = features.rows();
  if (n == 0) throw ContractError("kiss_nll: no training points");
  ad::Tape& tape = *features.tape;
  std::size_t clamped = 0;
  Var s = interp_matrix(features, grid, &clamped);
  if (stats) stats->clamped += clamped;
  Var u = tape.constant(grid.points);
  Var kuu = kernel_matrix(u, u, theta.log_lengthscales);
  Var noise = ad::exp(theta.log_noise);
  Var fit = kiss_quad_form(s, kuu, noise, targets, cg);
  Var approx = ad::matmul(ad::matmul(s, kuu), ad::transpose(s));
  Var chol = ad::cholesky(ad::add_scaled_identity(approx, noise)).factor;
  const double constant = 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  return ad::add_scalar(ad::add(fit, ad::sum_log_diag(chol)), constant);
}

}  // namespace agp::gp
