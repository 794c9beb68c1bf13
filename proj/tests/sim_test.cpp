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

#include <gtest/gtest.h>

#include <cstring>
#include <random>
#include <set>

#include "oracles.hpp"
#include "test_util.hpp"
#include "tfshift/errors.hpp"
#include "tfshift/random.hpp"

namespace tfshift {
namespace {

using testing::max_abs_diff;

class SimTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { flags_ = new std::vector<Flag>(flag_family(Prime(101), 4, 1)); }
  static void TearDownTestSuite() { delete flags_; }
  static const std::vector<Flag>& flags() { return *flags_; }
  static std::map<std::string, Signal> waveforms() {
    std::map<std::string, Signal> m;
    for (std::size_t k = 0; k < flags().size(); ++k) m.emplace("s" + std::to_string(k), flags()[k].signal);
    return m;
  }

 private:
  static std::vector<Flag>* flags_;
};
std::vector<Flag>* SimTest::flags_ = nullptr;

TEST_F(SimTest, SingleUserAtOriginIsTheSender) {
  const ChannelSpec spec{Prime(101), {{"s0", {0, 0}}}, 0.0, 1};
  EXPECT_EQ(max_abs_diff(synthesize_receiver(spec, waveforms()), flags()[0].signal), 0.0);
}

TEST_F(SimTest, SingleUserPeakIsSenderEnergy) {
  const ChannelSpec spec{Prime(101), {{"s1", {17, 93}}}, 0.0, 1};
  const Signal r = synthesize_receiver(spec, waveforms());
  const Signal& s = flags()[1].signal;
  EXPECT_LT(std::abs(mf_entry(s, r, {17, 93}) - inner(s, s)), 1e-12);
}

TEST_F(SimTest, BitsAndIntensitiesScale) {
  const ChannelSpec spec{Prime(101), {{"s0", {3, 4}, -1, 0.5}}, 0.0, 1};
  const Signal r = synthesize_receiver(spec, waveforms());
  EXPECT_LT(max_abs_diff(r, Complex(-0.5) * heisenberg_op(flags()[0].signal, {3, 4})), 1e-15);
}

TEST_F(SimTest, Errors) {
  EXPECT_THROW(synthesize_receiver({Prime(101), {{"nope", {0, 0}}}, 0.0, 1}, waveforms()), DomainError);
  EXPECT_THROW(synthesize_receiver({Prime(101), {}, 0.0, 1}, waveforms()), DomainError);
  EXPECT_THROW(synthesize_receiver({Prime(101), {{"s0", {0, 0}, 2}}, 0.0, 1}, waveforms()), DomainError);
  std::map<std::string, Signal> other{{"x", Signal::delta(Prime(7), 0)}};
  EXPECT_THROW(synthesize_receiver({Prime(101), {{"x", {0, 0}}}, 0.0, 1}, other), DomainError);
}

TEST_F(SimTest, ThreeFlagUsersMatchTermByTermExpansion) {
  const Prime p(101);
  const std::vector<PlanePoint> shifts = {{50, 50}, {3, 88}, {71, 12}};
  const std::vector<int> bits = {1, -1, 1};
  ChannelSpec spec{p, {}, 0.0, 1};
  for (int j = 0; j < 3; ++j) spec.users.push_back({"s" + std::to_string(j), shifts[j], bits[j]});
  const Signal r = synthesize_receiver(spec, waveforms());
  for (int k = 0; k < 3; ++k) {
    const Signal& sk = flags()[k].signal;
    const MFMatrix m = mf_full(sk, r);
    for (Residue tau = 0; tau < 101; ++tau) {
      for (Residue omega = 0; omega < 101; ++omega) {
        Complex want{};
        for (int j = 0; j < 3; ++j) {
          const auto [tj, wj] = shifts[j];
          const std::int64_t phase = std::int64_t{tj} * wj - std::int64_t{omega} * tj;
          want += double(bits[j]) * oracle::e(phase, 101) *
                  mf_entry(sk, flags()[j].signal, {sub(p, tau, tj), sub(p, omega, wj)});
        }
        ASSERT_LT(std::abs(m.at(tau, omega) - want), 1e-9);
      }
    }
  }
}

TEST_F(SimTest, DeterministicReceiver) {
  const ChannelSpec spec{Prime(101), {{"s0", {1, 2}}, {"s1", {3, 4}, -1}}, 0.3, 99};
  const Signal a = synthesize_receiver(spec, waveforms());
  const Signal b = synthesize_receiver(spec, waveforms());
  EXPECT_EQ(std::memcmp(a.samples().data(), b.samples().data(), a.size() * sizeof(Complex)), 0);
}

TEST_F(SimTest, NoiseScaling) {
  const Prime p(101);
  const double sigma = 0.15;
  ChannelSpec spec{p, {{"s0", {10, 20}}}, 0.0, 0};
  const Signal clean = synthesize_receiver(spec, waveforms());
  spec.sigma = sigma;
  double energy = 0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    spec.seed = k;
    energy += (synthesize_receiver(spec, waveforms()) - clean).norm_squared();
  }
  EXPECT_NEAR(energy / 1000 / (101 * sigma * sigma), 1.0, 0.05);
}

TEST(MonteCarloTest, SingleUserNoiseless) {
  MonteCarloConfig cfg;
  cfg.users = 1;
  cfg.trials = 100;
  const TrialStats s = monte_carlo(cfg);
  EXPECT_EQ(s.trials, 100u);
  EXPECT_EQ(s.detections, 100u);
  EXPECT_EQ(s.exact_shift_rate, 1.0);
  EXPECT_EQ(s.bit_error_rate, 0.0);
  EXPECT_NEAR(s.mean_peak_mag, 2.0, 4 / std::sqrt(101.0));
}

TEST(MonteCarloTest, ThreeFlagsNoiseless) {
  MonteCarloConfig cfg;
  cfg.users = 3;
  cfg.trials = 100;
  const TrialStats s = monte_carlo(cfg);
  EXPECT_EQ(s.exact_shift_rate, 1.0);
  EXPECT_EQ(s.bit_error_rate, 0.0);
}

TEST(MonteCarloTest, ThreeFlagsNoisyFloor) {
  MonteCarloConfig cfg;
  cfg.users = 3;
  cfg.trials = 500;
  cfg.sigma = 1 / std::sqrt(101.0);
  const TrialStats s = monte_carlo(cfg);
  EXPECT_GE(s.exact_shift_rate, 0.99);
  EXPECT_LT(s.bit_error_rate, 0.01);
}

TEST(MonteCarloTest, CrossMethodNoiseless) {
  MonteCarloConfig cfg;
  cfg.users = 2;
  cfg.trials = 100;
  cfg.method = Method::kCross;
  const TrialStats s = monte_carlo(cfg);
  EXPECT_EQ(s.exact_shift_rate, 1.0);
  EXPECT_EQ(s.bit_error_rate, 0.0);
}

TEST(MonteCarloTest, DeterministicAndRatesInRange) {
  MonteCarloConfig cfg;
  cfg.users = 3;
  cfg.trials = 40;
  cfg.sigma = 0.2;
  cfg.seed = 7;
  const TrialStats a = monte_carlo(cfg), b = monte_carlo(cfg);
  EXPECT_EQ(a.exact_shift_rate, b.exact_shift_rate);
  EXPECT_EQ(a.bit_error_rate, b.bit_error_rate);
  EXPECT_EQ(a.confident_rate, b.confident_rate);
  EXPECT_EQ(a.mean_stage1_mag, b.mean_stage1_mag);
  EXPECT_EQ(a.mean_peak_mag, b.mean_peak_mag);
  for (double r : {a.exact_shift_rate, a.bit_error_rate, a.confident_rate}) {
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
  }
}

TEST(MonteCarloTest, Errors) {
  MonteCarloConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(monte_carlo(cfg), DomainError);
  cfg.trials = 1;
  cfg.method = Method::kCross;
  cfg.users = 52;
  EXPECT_THROW(monte_carlo(cfg), DomainError);
}

// Four satellites at p sigma^2 = 1. Success means bit and delay both right.
// Exhaustive argmax over the plane is the reference detector here.
TEST(GpsTest, FourSatellitesNoisyAgainstExhaustiveSearch) {
  const Prime p(101);
  const auto family = make_family(p, Method::kFlag, 4, 1);
  std::size_t fast_ok = 0, full_ok = 0, n = 0;
  for (std::size_t trial = 0; trial < 500; ++trial) {
    Rng rng(substream(1, trial));
    std::uniform_int_distribution<Residue> coord(0, 100);
    Signal r = awgn(p, 1 / std::sqrt(101.0), rng());
    std::vector<PlanePoint> shifts;
    std::vector<int> bits;
    for (int k = 0; k < 4; ++k) {
      shifts.push_back({coord(rng), coord(rng)});
      bits.push_back((rng() & 1) ? 1 : -1);
      r += double(bits.back()) * heisenberg_op(family[k].signal, shifts.back());
    }
    const auto fixes = gps_solve(r, family);
    for (int k = 0; k < 4; ++k) {
      ++n;
      fast_ok += fixes[k].bit == bits[k] && fixes[k].tau == shifts[k].tau;
      const PlanePoint v = mf_full(family[k].signal, r).argmax();
      const int bit = mf_entry(family[k].signal, r, v).real() < 0 ? -1 : 1;
      full_ok += bit == bits[k] && v.tau == shifts[k].tau;
    }
  }
  const double fast = double(fast_ok) / n, full = double(full_ok) / n;
  RecordProperty("fast_success", std::to_string(fast));
  RecordProperty("exhaustive_success", std::to_string(full));
  EXPECT_GE(fast, 0.98);
  EXPECT_GE(fast, full - 0.005);
}

TEST(RadarRobustnessTest, WeakerEchoes) {
  const Prime p(101);
  const Flag f = flag_family(p, 1, 2)[0];
  const std::map<std::string, Signal> w{{"radar", f.signal}};
  const std::vector<double> alpha = {1.0, 0.7, 0.5};
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<Residue> coord(0, 100);
  for (int trial = 0; trial < 10; ++trial) {
    ChannelSpec spec{p, {}, 0.0, 0};
    std::set<Residue> keys;
    std::set<PlanePoint> truth;
    while (spec.users.size() < 3) {
      const PlanePoint v{coord(rng), coord(rng)};
      const Residue key = f.line.is_vertical() ? v.tau : sub(p, v.omega, mul(p, f.line.slope, v.tau));
      if (!keys.insert(key).second) continue;
      spec.users.push_back({"radar", v, 1, alpha[spec.users.size()]});
      truth.insert(v);
    }
    // Thresholds scale with the weakest echo.
    const RadarResult res = radar_detect(synthesize_receiver(spec, w), f, 3, 0.5 * 0.5, 0.5 * 1.5);
    std::set<PlanePoint> found;
    for (const auto& d : res.targets) found.insert(d.shift);
    EXPECT_EQ(found, truth) << "trial " << trial;
  }
}

TEST(BenchTest, RatioAndOpCounts) {
  const std::vector<Prime> primes = {Prime(1009), Prime(10007), Prime(100003)};
  const auto rows = bench_complexity(primes, 5);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_FALSE(rows[0].full_extrapolated);
  EXPECT_TRUE(rows[1].full_extrapolated);
  EXPECT_GE(rows[0].ratio, 50.0);
  EXPECT_LT(rows[0].ratio, rows[1].ratio);
  EXPECT_LT(rows[1].ratio, rows[2].ratio);
  std::vector<double> x, ops, secs;
  for (const auto& r : rows) {
    x.push_back(r.p);
    ops.push_back(static_cast<double>(r.line_dft_ops));
    secs.push_back(r.line_seconds);
  }
  EXPECT_LE(fitted_exponent(x, ops), 1.3);
  EXPECT_LE(fitted_exponent(x, secs), 1.3);
}

TEST(FittedExponentTest, PowerLaws) {
  const std::vector<double> x = {10, 100, 1000};
  EXPECT_NEAR(fitted_exponent(x, std::vector<double>{10, 100, 1000}), 1.0, 1e-12);
  EXPECT_NEAR(fitted_exponent(x, std::vector<double>{3e2, 3e4, 3e6}), 2.0, 1e-12);
  EXPECT_THROW(fitted_exponent(std::vector<double>{1}, std::vector<double>{1}), DomainError);
}

}  // namespace
}  // namespace tfshift
