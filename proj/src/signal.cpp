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

#include "tfshift/signal.hpp"

#include <cmath>
#include <numbers>

#include "tfshift/errors.hpp"
#include "tfshift/parallel.hpp"
#include "tfshift/random.hpp"

namespace tfshift {
namespace {

void require_same_prime(const Signal& a, const Signal& b, const char* op) {
  if (a.prime() != b.prime()) {
    throw DomainError(std::string(op) + ": signals over different primes (" +
                      std::to_string(a.prime().value()) + " vs " +
                      std::to_string(b.prime().value()) + ")");
  }
}

}  // namespace

Signal::Signal(Prime p, std::vector<Complex> samples) : p_(p), samples_(std::move(samples)) {
  if (samples_.size() != p.value()) {
    throw DomainError("signal length " + std::to_string(samples_.size()) +
                      " does not match p = " + std::to_string(p.value()));
  }
}

Signal Signal::delta(Prime p, Residue at) {
  Signal s(p);
  s[at % p.value()] = 1.0;
  return s;
}

Signal Signal::constant(Prime p, Complex value) {
  return Signal(p, std::vector<Complex>(p.value(), value));
}

double Signal::norm_squared() const {
  double acc = 0.0;
  for (const auto& z : samples_) acc += std::norm(z);
  return acc;
}

double Signal::norm() const { return std::sqrt(norm_squared()); }

bool Signal::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

Signal Signal::normalized() const {
  const double n = norm();
  if (n == 0.0) throw DomainError("cannot normalize the zero signal");
  Signal out = *this;
  out *= 1.0 / n;
  return out;
}

Signal& Signal::operator+=(const Signal& other) {
  require_same_prime(*this, other, "add");
  for (std::size_t t = 0; t < samples_.size(); ++t) samples_[t] += other.samples_[t];
  return *this;
}

Signal& Signal::operator-=(const Signal& other) {
  require_same_prime(*this, other, "subtract");
  for (std::size_t t = 0; t < samples_.size(); ++t) samples_[t] -= other.samples_[t];
  return *this;
}

Signal& Signal::operator*=(Complex scale) {
  for (auto& z : samples_) z *= scale;
  return *this;
}

Signal operator+(Signal a, const Signal& b) { return a += b; }
Signal operator-(Signal a, const Signal& b) { return a -= b; }
Signal operator*(Complex scale, Signal a) { return a *= scale; }

Complex inner(const Signal& f1, const Signal& f2) {
  require_same_prime(f1, f2, "inner");
  Complex acc{};
  for (std::size_t t = 0; t < f1.size(); ++t) acc += f1[t] * std::conj(f2[t]);
  return acc;
}

Signal time_shift(const Signal& f, Residue tau) {
  const Prime p = f.prime();
  Signal out(p);
  for (Residue t = 0; t < p.value(); ++t) out[t] = f[add(p, t, tau % p.value())];
  return out;
}

Signal modulate(const Signal& f, Residue omega) {
  const Prime p = f.prime();
  const auto& roots = unit_roots(p);
  Signal out(p);
  for (Residue t = 0; t < p.value(); ++t) out[t] = roots[mul(p, omega % p.value(), t)] * f[t];
  return out;
}

Signal heisenberg_op(const Signal& f, PlanePoint v) {
  const Prime p = f.prime();
  const auto& roots = unit_roots(p);
  const Residue tau = v.tau % p.value();
  const Residue omega = v.omega % p.value();
  Signal out(p);
  for (Residue t = 0; t < p.value(); ++t) {
    out[t] = roots[mul(p, omega, t)] * f[add(p, t, tau)];
  }
  return out;
}

Signal heisenberg_op_symmetric(const Signal& f, PlanePoint v) {
  const Prime p = f.prime();
  const Residue phase = mul(p, inv(p, 2), mul(p, v.tau % p.value(), v.omega % p.value()));
  Signal out = heisenberg_op(f, v);
  out *= unit_roots(p)[phase];
  return out;
}

PlanePoint MFMatrix::argmax() const {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double m = std::abs(entries_[i]);
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  return {static_cast<Residue>(best / p_.value()), static_cast<Residue>(best % p_.value())};
}

Complex mf_entry(const Signal& S, const Signal& R, PlanePoint v) {
  require_same_prime(S, R, "mf_entry");
  const Prime p = S.prime();
  const auto& roots = unit_roots(p);
  const Residue tau = v.tau % p.value();
  const Residue omega = v.omega % p.value();
  Complex acc{};
  for (Residue t = 0; t < p.value(); ++t) {
    acc += roots[mul(p, omega, t)] * S[add(p, t, tau)] * std::conj(R[t]);
  }
  return acc;
}

MFMatrix mf_full(const Signal& S, const Signal& R) {
  require_same_prime(S, R, "mf_full");
  const Prime p = S.prime();
  const DftPlan& plan = dft_plan(p);
  MFMatrix m(p);
  parallel_for(p.value(), [&](std::size_t row) {
    const auto tau = static_cast<Residue>(row);
    std::vector<Complex> u(p.value());
    for (Residue t = 0; t < p.value(); ++t) u[t] = S[add(p, t, tau)] * std::conj(R[t]);
    const auto spectrum = plan.transform(u, Direction::kForward);
    auto dst = m.row(tau);
    std::copy(spectrum.begin(), spectrum.end(), dst.begin());
  });
  return m;
}

Signal awgn(Prime p, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw DomainError("noise level must be nonnegative");
  Signal w(p);
  if (sigma == 0.0) return w;
  Rng rng(seed);
  std::normal_distribution<double> component(0.0, sigma / std::numbers::sqrt2);
  for (Residue t = 0; t < p.value(); ++t) {
    const double re = component(rng);
    const double im = component(rng);
    w[t] = {re, im};
  }
  return w;
}

Signal random_phase_signal(Prime p, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double amp = 1.0 / std::sqrt(static_cast<double>(p.value()));
  Signal s(p);
  for (Residue t = 0; t < p.value(); ++t) s[t] = std::polar(amp, phase(rng));
  return s;
}

}  // namespace tfshift
