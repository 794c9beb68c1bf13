// Copyright 2026 The tfshift Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tfshift/detect.hpp"
#include "tfshift/signal.hpp"

namespace tfshift {

struct UserSpec {
  std::string waveform;  // key into the waveform map
  PlanePoint shift;
  int bit = 1;
  double intensity = 1.0;
};

struct ChannelSpec {
  Prime p;
  std::vector<UserSpec> users;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

// R = sum_j intensity_j bit_j pi(shift_j) S_j + awgn(p, sigma, seed).
Signal synthesize_receiver(const ChannelSpec& spec, const std::map<std::string, Signal>& waveforms);

enum class Method { kFlag, kCross };

struct MonteCarloConfig {
  Prime p{101};
  std::size_t users = 3;
  double sigma = 0.0;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  Method method = Method::kFlag;
  Thresholds thresholds{};
};

// Rates are per (trial, user) pair.
struct TrialStats {
  std::size_t trials = 0;
  std::size_t detections = 0;  // trials * users
  double exact_shift_rate = 0.0;
  double bit_error_rate = 0.0;
  double confident_rate = 0.0;
  double mean_stage1_mag = 0.0;
  double mean_peak_mag = 0.0;
  double wall_time = 0.0;  // seconds
};

// Builds the waveform family for `users` senders of the given method.
std::vector<Waveform> make_family(Prime p, Method method, std::size_t users, std::uint64_t seed);

// Each trial draws uniform shifts over V, uniform bits and a noise seed from
// its own substream of cfg.seed, synthesizes R, and runs extract_bits.
TrialStats monte_carlo(const MonteCarloConfig& cfg);
TrialStats monte_carlo(const MonteCarloConfig& cfg, std::span<const Waveform> family);

struct BenchRow {
  std::uint32_t p = 0;
  double line_seconds = 0.0;  // median of one mf_on_line call
  double full_seconds = 0.0;  // one mf_full (possibly extrapolated)
  double ratio = 0.0;
  bool full_extrapolated = false;
  std::uint64_t line_dft_ops = 0;  // dft counter for one mf_on_line call
};

// Full-plane timings above `full_limit` are extrapolated from `sample_rows`
// timed delay rows (rows cost the same by construction).
std::vector<BenchRow> bench_complexity(std::span<const Prime> primes, int repeats,
                                       std::uint32_t full_limit = 2000,
                                       std::uint32_t sample_rows = 64);

// Least-squares slope of log(y) against log(x).
double fitted_exponent(std::span<const double> x, std::span<const double> y);

}  // namespace tfshift
