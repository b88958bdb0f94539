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

#include "agp/model/network.hpp"

#include <cmath>
#include <random>
#include <string>

#include "agp/autodiff/ops.hpp"
#include "agp/errors.hpp"

namespace agp::model {
namespace {

struct Initializer {
  std::mt19937_64 rng;

  Tensor uniform(std::size_t rows, std::size_t cols, std::size_t fan_in) {
    const double bound = std::sqrt(1.0 / static_cast<double>(fan_in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    Tensor t({rows, cols});
    for (double& v : t.data()) v = dist(rng);
    return t;
  }
};

std::string layer_name(const char* stack, std::size_t layer) { return std::string(stack) + "." + std::to_string(layer); }

void add_attention(ParamSet& out, Initializer& init, const std::string& base, std::size_t q_in, std::size_t kv_in,
                   const ModelConfig& cfg) {
  for (std::size_t h = 0; h < cfg.n_heads; ++h) {
    const std::string hb = base + ".h" + std::to_string(h);
    out.set(hb + ".q", init.uniform(q_in, cfg.d_k, q_in));
    out.set(hb + ".k", init.uniform(kv_in, cfg.d_k, kv_in));
    out.set(hb + ".v", init.uniform(kv_in, cfg.d_k, kv_in));
  }
  out.set(base + ".o", init.uniform(cfg.n_heads * cfg.d_k, cfg.d_h, cfg.n_heads * cfg.d_k));
}

void add_feedforward(ParamSet& out, Initializer& init, const std::string& base, std::size_t in, std::size_t hidden,
                     std::size_t width_out) {
  out.set(base + ".w1", init.uniform(in, hidden, in));
  out.set(base + ".b1", init.uniform(1, hidden, in));
  out.set(base + ".w2", init.uniform(hidden, width_out, hidden));
  out.set(base + ".b2", init.uniform(1, width_out, hidden));
}

// Residual skip: identity when widths agree, otherwise a learned projection.
void add_skip(ParamSet& out, Initializer& init, const std::string& name, std::size_t in, std::size_t width_out) {
  if (in != width_out) out.set(name, init.uniform(in, width_out, in));
}

Var skip(Var input, const BoundParams& p, const std::string& name) {
  return p.contains(name) ? ad::matmul(input, p[name]) : input;
}

std::vector<HeadProjections> heads_of(const BoundParams& p, const std::string& base, std::size_t n_heads) {
  std::vector<HeadProjections> heads;
  for (std::size_t h = 0; h < n_heads; ++h) {
    const std::string hb = base + ".h" + std::to_string(h);
    heads.push_back({p[hb + ".q"], p[hb + ".k"], p[hb + ".v"]});
  }
  return heads;
}

Var feedforward(Var in, const BoundParams& p, const std::string& base) {
  Var hidden = ad::relu(ad::add(ad::matmul(in, p[base + ".w1"]), p[base + ".b1"]));
  return ad::add(ad::matmul(hidden, p[base + ".w2"]), p[base + ".b2"]);
}

}  // namespace

ParamSet init_params(const ModelConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Initializer init{std::mt19937_64(seed)};
  ParamSet out;
  out.set("embed.x.w", init.uniform(cfg.input_dim, cfg.d_x, cfg.input_dim));
  out.set("embed.x.b", init.uniform(1, cfg.d_x, cfg.input_dim));
  out.set("embed.y.w", init.uniform(1, cfg.d_x, 1));
  out.set("embed.y.b", init.uniform(1, cfg.d_x, 1));
  out.set("embed.y.start", init.uniform(1, cfg.d_x, 1));

  for (std::size_t l = 0; l < cfg.n_layers; ++l) {
    const std::string base = layer_name("enc", l);
    const std::size_t in = l == 0 ? cfg.d_x : cfg.d_c;
    add_attention(out, init, base + ".self", in, in, cfg);
    add_skip(out, init, base + ".self.skip", in, cfg.d_h);
    add_feedforward(out, init, base + ".ff", cfg.d_h, cfg.d_h, cfg.d_c);
    add_skip(out, init, base + ".ff.skip", cfg.d_h, cfg.d_c);
  }
  for (std::size_t l = 0; l < cfg.n_layers; ++l) {
    const std::string base = layer_name("dec", l);
    const std::size_t in = l == 0 ? cfg.d_x : cfg.d_h;
    add_attention(out, init, base + ".self", in, in, cfg);
    add_skip(out, init, base + ".self.skip", in, cfg.d_h);
    add_attention(out, init, base + ".cross", cfg.d_h, cfg.d_c, cfg);
    add_feedforward(out, init, base + ".ff", cfg.d_h, cfg.d_h, cfg.d_h);
  }
  out.set("head.w", init.uniform(cfg.d_h, cfg.F, cfg.d_h));
  out.set("head.b", init.uniform(1, cfg.F, cfg.d_h));
  return out;
}

Var embed(Var seq, Var w, Var b, Var pe) { return ad::add(ad::add(ad::matmul(seq, w), b), pe); }

Var encoder_forward(Var x_embedded, const BoundParams& p, const ModelConfig& cfg) {
  Var z = x_embedded;
  for (std::size_t l = 0; l < cfg.n_layers; ++l) {
    const std::string base = layer_name("enc", l);
    const auto heads = heads_of(p, base + ".self", cfg.n_heads);
    Var h = ad::add(skip(z, p, base + ".self.skip"), multi_head_attention(z, z, heads, p[base + ".self.o"]));
    z = ad::add(skip(h, p, base + ".ff.skip"), feedforward(h, p, base + ".ff"));
  }
  return z;
}

Var decoder_forward(Var y_embedded, Var enc_out, const BoundParams& p, const ModelConfig& cfg) {
  const std::size_t len = y_embedded.rows();
  if (enc_out.rows() != len) throw ShapeError("decoder_forward: encoder and decoder lengths differ");
  Var mask = y_embedded.tape->constant(causal_mask(len));
  Var z = y_embedded;
  for (std::size_t l = 0; l < cfg.n_layers; ++l) {
    const std::string base = layer_name("dec", l);
    const auto self_heads = heads_of(p, base + ".self", cfg.n_heads);
    Var s = ad::add(skip(z, p, base + ".self.skip"),
                    multi_head_attention(z, z, self_heads, p[base + ".self.o"], mask));
    const auto cross_heads = heads_of(p, base + ".cross", cfg.n_heads);
    Var d = ad::add(s, multi_head_attention(s, enc_out, cross_heads, p[base + ".cross.o"]));
    z = ad::add(d, feedforward(d, p, base + ".ff"));
  }
  return ad::add(ad::matmul(z, p["head.w"]), p["head.b"]);
}

Var embed_outputs(Var y, const BoundParams& p, const ModelConfig& cfg) {
  const std::size_t len = y.rows();
  if (y.cols() != 1) throw ShapeError("embed_outputs: targets must be L x 1");
  ad::Tape& tape = *y.tape;
  Var pe = tape.constant(positional_encoding(len, cfg.d_x));
  Var start = p["embed.y.start"];
  Var rows = start;
  if (len > 1) {
    Var prev = ad::slice_rows(y, 0, len - 1);
    Var shifted = ad::add(ad::matmul(prev, p["embed.y.w"]), p["embed.y.b"]);
    const Var parts[] = {start, shifted};
    rows = ad::concat_rows(parts);
  }
  return ad::add(rows, pe);
}

Var features(Var x, Var y, const BoundParams& p, const ModelConfig& cfg) {
  if (x.rows() != y.rows()) throw ShapeError("features: input and target lengths differ");
  if (x.cols() != cfg.input_dim) {
    throw ShapeError("features: expected " + std::to_string(cfg.input_dim) + " input channels, got " +
                     std::to_string(x.cols()));
  }
  ad::Tape& tape = *x.tape;
  Var pe = tape.constant(positional_encoding(x.rows(), cfg.d_x));
  Var x_emb = embed(x, p["embed.x.w"], p["embed.x.b"], pe);
  Var enc = encoder_forward(x_emb, p, cfg);
  return decoder_forward(embed_outputs(y, p, cfg), enc, p, cfg);
}

Var batch_features(ad::Tape& tape, const BoundParams& p, const ModelConfig& cfg, std::span<const Tensor> inputs,
                   std::span<const Tensor> targets, std::span<const std::size_t> indices) {
  if (indices.empty()) throw ContractError("batch_features: empty batch");
  std::vector<Var> parts;
  parts.reserve(indices.size());
  for (std::size_t i : indices) {
    parts.push_back(features(tape.constant(inputs[i]), tape.constant(targets[i]), p, cfg));
  }
  return parts.size() == 1 ? parts[0] : ad::concat_rows(parts);
}

Tensor compute_features(const ParamSet& weights, const ModelConfig& cfg, std::span<const Tensor> inputs,
                        std::span<const Tensor> targets) {
  ad::Tape tape;
  BoundParams p = BoundParams::bind(tape, weights, false);
  std::vector<std::size_t> idx(inputs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return batch_features(tape, p, cfg, inputs, targets, idx).value();
}

}  // namespace agp::model
