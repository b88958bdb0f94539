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

#include "agp/data/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "agp/errors.hpp"

namespace agp::data {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

DatasetSplits gen_sin(const SinOptions& opts) {
  if (opts.n_points < 10) throw ContractError("gen_sin: n_points must be at least 10");
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  auto make = [&](double lo, double hi, std::size_t n, bool open_lo, Split split) {
    std::uniform_real_distribution<double> ux(lo, hi);
    std::vector<double> xs(n);
    for (double& x : xs) {
      do {
        x = ux(rng);
      } while (open_lo && x <= lo);
    }
    std::sort(xs.begin(), xs.end());
    std::vector<std::vector<double>> in(n);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      in[i] = {xs[i]};
      out[i] = std::sin(kPi * opts.omega * xs[i]);
      if (opts.noise_sd > 0.0) out[i] += opts.noise_sd * noise(rng);
    }
    return window_series(in, out, opts.length, split);
  };

  DatasetSplits out;
  out.train = make(-1.0, 1.0, opts.n_points, false, Split::kTrain);
  const auto n_test = std::max<std::size_t>(
      opts.length, static_cast<std::size_t>(std::llround(opts.test_fraction * static_cast<double>(opts.n_points))));
  out.test = make(1.0, 1.5, n_test, true, Split::kTest);
  return out;
}

std::vector<double> simulate_suspension(const SuspensionParams& p, std::span<const double> excitation) {
  const double c = 2.0 * p.zeta * p.omega;
  const double k = p.omega * p.omega;
  auto accel = [&](double x, double v, double u) { return u - c * v - k * x - p.alpha * x * x * x; };
  double x = 0.0, v = 0.0;
  std::vector<double> out;
  out.reserve(excitation.size());
  for (double u : excitation) {
    const double k1x = v, k1v = accel(x, v, u);
    const double k2x = v + 0.5 * p.dt * k1v, k2v = accel(x + 0.5 * p.dt * k1x, v + 0.5 * p.dt * k1v, u);
    const double k3x = v + 0.5 * p.dt * k2v, k3v = accel(x + 0.5 * p.dt * k2x, v + 0.5 * p.dt * k2v, u);
    const double k4x = v + p.dt * k3v, k4v = accel(x + p.dt * k3x, v + p.dt * k3v, u);
    x += p.dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += p.dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!std::isfinite(x) || std::abs(x) > 1e3) {
      throw GenerationError("suspension simulation diverged (|x| > 1e3); try a smaller alpha or time step");
    }
    out.push_back(x);
  }
  return out;
}

std::vector<double> suspension_excitation(const SuspensionOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> freq(opts.band_lo_hz, opts.band_hi_hz);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  std::vector<double> f(opts.n_tones), ph(opts.n_tones);
  for (std::size_t k = 0; k < opts.n_tones; ++k) {
    f[k] = freq(rng);
    ph[k] = phase(rng);
  }
  const double gain = opts.n_tones ? opts.amplitude / std::sqrt(static_cast<double>(opts.n_tones)) : 0.0;
  std::vector<double> u(opts.n_steps);
  for (std::size_t i = 0; i < opts.n_steps; ++i) {
    const double t = static_cast<double>(i) * opts.params.dt;
    double s = 0.0;
    for (std::size_t k = 0; k < opts.n_tones; ++k) s += std::sin(2.0 * kPi * f[k] * t + ph[k]);
    u[i] = gain * s;
  }
  return u;
}

DatasetSplits gen_suspension(const SuspensionOptions& opts) {
  if (opts.decimation == 0) throw ContractError("gen_suspension: decimation must be positive");
  if (opts.n_steps / opts.decimation < opts.length) throw ContractError("gen_suspension: n_steps too small for one window");
  const std::vector<double> u = suspension_excitation(opts);
  const std::vector<double> x = simulate_suspension(opts.params, u);
  // Noise uses its own stream so the excitation does not depend on noise_sd.
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<std::vector<double>> in;
  std::vector<double> out;
  for (std::size_t i = 0; i < x.size(); i += opts.decimation) {
    in.push_back({u[i]});
    double y = x[i];
    if (opts.noise_sd > 0.0) y += opts.noise_sd * noise(rng);
    out.push_back(y);
  }
  return chronological_split(window_series(in, out, opts.length, Split::kTrain));
}

DatasetSplits gen_load(const LoadOptions& opts) {
  if (opts.n_steps < opts.length) throw ContractError("gen_load: n_steps must be at least one window");
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t m = opts.channels;

  std::vector<double> season_phase(m), daily_peak(m), offset(m), weight(m);
  double wsum = 0.0;
  for (std::size_t c = 0; c < m; ++c) {
    season_phase[c] = 0.1 * unit(rng);
    daily_peak[c] = 12.0 + 4.0 * unit(rng);
    offset[c] = 4.0 * (unit(rng) - 0.5);
    weight[c] = 0.5 + unit(rng);
    wsum += weight[c];
  }
  for (double& w : weight) w /= wsum;

  std::vector<double> ar(m, 0.0);
  std::vector<std::vector<double>> in(opts.n_steps, std::vector<double>(m));
  std::vector<double> out(opts.n_steps);
  for (std::size_t t = 0; t < opts.n_steps; ++t) {
    const double hour = static_cast<double>(t);
    double avg = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      ar[c] = opts.ar_coef * ar[c] + opts.ar_sd * gauss(rng);
      const double seasonal = opts.seasonal_amp * std::sin(2.0 * kPi * (hour / 8760.0 + season_phase[c]));
      const double daily = opts.daily_amp * std::cos(2.0 * kPi * (hour - daily_peak[c]) / 24.0);
      const double temp = opts.base_temp + (opts.seasonal_amp != 0.0 || opts.daily_amp != 0.0 || opts.ar_sd != 0.0
                                                ? offset[c] : 0.0) +
                          seasonal + daily + ar[c];
      in[t][c] = temp;
      avg += weight[c] * temp;
    }
    const double dev = avg - 18.0;
    const double profile = opts.profile_amp * (std::sin(2.0 * kPi * (hour - 7.0) / 24.0) +
                                               0.5 * std::sin(4.0 * kPi * (hour - 7.0) / 24.0));
    double load = 1.0 + 0.02 * dev * dev + profile;
    if (opts.noise_sd > 0.0) load += opts.noise_sd * gauss(rng);
    out[t] = load;
  }
  return chronological_split(window_series(in, out, opts.length, Split::kTrain));
}

}  // namespace agp::data
