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

#include <cstdint>
#include <span>
#include <vector>

#include "agp/data/dataset.hpp"

namespace agp::data {

// Generators return raw (unnormalized) train/test splits.

struct SinOptions {
  std::size_t n_points = 160;  ///< training points on [-1, 1]
  double noise_sd = 0.05;
  std::uint64_t seed = 1;
  std::size_t length = 8;        ///< window length L
  double omega = 2.0;            ///< y = sin(pi * omega * x): two periods over [-1, 1]
  double test_fraction = 0.25;   ///< test points on (1, 1.5], relative to n_points
};

/// Train windows from sorted x ~ U[-1, 1]; test windows from x ~ U(1, 1.5].
DatasetSplits gen_sin(const SinOptions& opts);

/// Mass-spring-damper with cubic stiffening in feedback:
///   x'' + 2 zeta omega x' + omega^2 x = u - alpha x^3.
struct SuspensionParams {
  double zeta = 0.05;
  double omega = 2.0 * 3.14159265358979323846;
  double alpha = 100.0;
  double dt = 0.01;
};

struct SuspensionOptions {
  std::size_t n_steps = 3200;  ///< integration steps
  double noise_sd = 0.01;
  std::uint64_t seed = 1;
  std::size_t length = 16;
  SuspensionParams params;
  std::size_t decimation = 5;  ///< keep every k-th integration step
  double band_lo_hz = 0.1;     ///< excitation band
  double band_hi_hz = 0.8;
  double amplitude = 20.0;
  std::size_t n_tones = 6;
};

/// RK4 integration with the excitation held constant over each step, from
/// rest. Returns positions after each step. Throws GenerationError when
/// |x| exceeds 1e3.
std::vector<double> simulate_suspension(const SuspensionParams& params, std::span<const double> excitation);

/// Band-limited random excitation (sum of random-phase tones).
std::vector<double> suspension_excitation(const SuspensionOptions& opts);

DatasetSplits gen_suspension(const SuspensionOptions& opts);

struct LoadOptions {
  std::size_t n_steps = 480;  ///< hourly samples
  std::uint64_t seed = 1;
  std::size_t channels = 11;  ///< temperature sites
  std::size_t length = 24;
  double base_temp = 15.0;
  double seasonal_amp = 8.0;
  double daily_amp = 5.0;
  double ar_coef = 0.9;
  double ar_sd = 0.8;
  double profile_amp = 0.3;  ///< daily load profile
  double noise_sd = 0.02;
};

/// Temperature-like channels (daily and seasonal sinusoids plus AR(1) noise)
/// and a load target given by a quadratic response to the weighted channel
/// average plus a daily profile.
DatasetSplits gen_load(const LoadOptions& opts);

}  // namespace agp::data
