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

#include "tfshift/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "tfshift/errors.hpp"
#include "tfshift/fastmf.hpp"
#include "tfshift/parallel.hpp"
#include "tfshift/random.hpp"

namespace tfshift {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct TrialOutcome {
  std::size_t exact = 0;
  std::size_t bit_errors = 0;
  std::size_t confident = 0;
  double stage1_sum = 0.0;
  double peak_sum = 0.0;
};

}  // namespace

Signal synthesize_receiver(const ChannelSpec& spec, const std::map<std::string, Signal>& waveforms) {
  if (spec.users.empty()) throw DomainError("channel needs at least one user");
  Signal r = awgn(spec.p, spec.sigma, spec.seed);
  for (const auto& user : spec.users) {
    const auto it = waveforms.find(user.waveform);
    if (it == waveforms.end()) throw DomainError("unknown waveform id '" + user.waveform + "'");
    if (it->second.prime() != spec.p) throw DomainError("waveform '" + user.waveform + "' has a different p");
    if (user.bit != 1 && user.bit != -1) throw DomainError("bits must be +1 or -1");
    r += (user.intensity * user.bit) * heisenberg_op(it->second, user.shift);
  }
  return r;
}

std::vector<Waveform> make_family(Prime p, Method method, std::size_t users, std::uint64_t seed) {
  std::vector<Waveform> family;
  if (method == Method::kFlag) {
    for (const auto& f : flag_family(p, users, seed)) family.push_back(Waveform::from(f));
  } else {
    const auto crosses = cross_family(p, seed);
    if (users > crosses.size()) {
      throw DomainError("cross family has only " + std::to_string(crosses.size()) + " members");
    }
    for (std::size_t i = 0; i < users; ++i) family.push_back(Waveform::from(crosses[i]));
  }
  return family;
}

TrialStats monte_carlo(const MonteCarloConfig& cfg) {
  const auto family = make_family(cfg.p, cfg.method, cfg.users, cfg.seed);
  return monte_carlo(cfg, family);
}

TrialStats monte_carlo(const MonteCarloConfig& cfg, std::span<const Waveform> family) {
  if (cfg.trials == 0) throw DomainError("monte carlo needs at least one trial");
  if (family.empty()) throw DomainError("empty waveform family");
  const Prime p = cfg.p;
  const auto start = Clock::now();

  std::map<std::string, Signal> waveforms;
  for (std::size_t k = 0; k < family.size(); ++k) waveforms.emplace(std::to_string(k), family[k].signal);

  std::vector<TrialOutcome> outcomes(cfg.trials);
  parallel_for(cfg.trials, [&](std::size_t trial) {
    Rng rng(substream(cfg.seed, trial));
    std::uniform_int_distribution<Residue> coord(0, p.value() - 1);
    std::bernoulli_distribution coin(0.5);
    ChannelSpec spec{p, {}, cfg.sigma, 0};
    for (std::size_t k = 0; k < family.size(); ++k) {
      const Residue tau = coord(rng);
      const Residue omega = coord(rng);
      spec.users.push_back({std::to_string(k), {tau, omega}, coin(rng) ? 1 : -1, 1.0});
    }
    spec.seed = rng();
    const Signal r = synthesize_receiver(spec, waveforms);
    const auto decisions = extract_bits(r, family, cfg.thresholds);

    TrialOutcome& out = outcomes[trial];
    for (std::size_t k = 0; k < family.size(); ++k) {
      const auto& d = decisions[k];
      if (d.detection.shift == spec.users[k].shift) ++out.exact;
      if (d.bit != spec.users[k].bit) ++out.bit_errors;
      if (d.detection.confident) ++out.confident;
      out.stage1_sum += d.detection.stage1_magnitude;
      out.peak_sum += d.detection.magnitude;
    }
  });

  TrialStats stats;
  stats.trials = cfg.trials;
  stats.detections = cfg.trials * family.size();
  TrialOutcome total;
  for (const auto& o : outcomes) {
    total.exact += o.exact;
    total.bit_errors += o.bit_errors;
    total.confident += o.confident;
    total.stage1_sum += o.stage1_sum;
    total.peak_sum += o.peak_sum;
  }
  const double n = static_cast<double>(stats.detections);
  stats.exact_shift_rate = total.exact / n;
  stats.bit_error_rate = total.bit_errors / n;
  stats.confident_rate = total.confident / n;
  stats.mean_stage1_mag = total.stage1_sum / n;
  stats.mean_peak_mag = total.peak_sum / n;
  stats.wall_time = seconds_since(start);
  return stats;
}

std::vector<BenchRow> bench_complexity(std::span<const Prime> primes, int repeats,
                                       std::uint32_t full_limit, std::uint32_t sample_rows) {
  if (repeats < 1) throw DomainError("bench needs at least one repeat");
  std::vector<BenchRow> rows;
  for (const Prime p : primes) {
    const Signal s = random_phase_signal(p, 11);
    const Signal r = heisenberg_op(s, {p.value() / 3, p.value() / 5}) + awgn(p, 0.01, 12);
    const Line line = Line::slope_line(1, {1, 2});
    (void)mf_on_line(s, r, line);  // warm-up, also builds the plan

    BenchRow row;
    row.p = p.value();
    const auto ops_before = dft_op_count();
    (void)mf_on_line(s, r, line);
    row.line_dft_ops = dft_op_count() - ops_before;

    std::vector<double> line_times;
    for (int k = 0; k < repeats; ++k) {
      const auto start = Clock::now();
      (void)mf_on_line(s, r, line);
      line_times.push_back(seconds_since(start));
    }
    row.line_seconds = median(line_times);

    if (p.value() <= full_limit) {
      std::vector<double> full_times;
      for (int k = 0; k < std::max(1, repeats / 4); ++k) {
        const auto start = Clock::now();
        (void)mf_full(s, r);
        full_times.push_back(seconds_since(start));
      }
      row.full_seconds = median(full_times);
    } else {
      // Time representative delay rows exactly as mf_full computes them.
      const DftPlan& plan = dft_plan(p);
      const std::uint32_t rows_timed = std::min(sample_rows, p.value());
      std::vector<Complex> u(p.value());
      const auto start = Clock::now();
      for (std::uint32_t k = 0; k < rows_timed; ++k) {
        const Residue tau = static_cast<Residue>((std::uint64_t{k} * p.value()) / rows_timed);
        for (Residue t = 0; t < p.value(); ++t) u[t] = s[add(p, t, tau)] * std::conj(r[t]);
        (void)plan.transform(u, Direction::kForward);
      }
      row.full_seconds = seconds_since(start) * p.value() / rows_timed;
      row.full_extrapolated = true;
    }
    row.ratio = row.full_seconds / row.line_seconds;
    rows.push_back(row);
  }
  return rows;
}

double fitted_exponent(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("need at least two points to fit");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace tfshift
