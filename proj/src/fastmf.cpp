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

#include "tfshift/fastmf.hpp"

#include <atomic>
#include <cmath>

#include "tfshift/errors.hpp"

namespace tfshift {
namespace {

std::atomic<std::uint64_t> g_line_calls{0};

}  // namespace

Residue LineProfile::argmax() const {
  Residue best = 0;
  double best_mag = -1.0;
  for (std::size_t t = 0; t < values.size(); ++t) {
    const double m = std::abs(values[t]);
    if (m > best_mag) {
      best_mag = m;
      best = static_cast<Residue>(t);
    }
  }
  return best;
}

std::vector<Complex> cross_correlate(const Signal& A, const Signal& B) {
  if (A.prime() != B.prime()) throw DomainError("cross_correlate: prime mismatch");
  const Prime p = A.prime();
  const DftPlan& plan = dft_plan(p);
  // With hat(x)[k] = sum_t x[t] e(-k t) = p * inverse(x)[k]:
  // C = (1/p) forward(hat(A) conj(hat(B))) = p forward(inverse(A) conj(inverse(B))).
  auto a = plan.transform(A.samples(), Direction::kInverse);
  const auto b = plan.transform(B.samples(), Direction::kInverse);
  const double scale = p.value();
  for (std::size_t k = 0; k < a.size(); ++k) a[k] *= std::conj(b[k]) * scale;
  return plan.transform(a, Direction::kForward);
}

LineProfile mf_on_line(const Signal& S, const Signal& R, const Line& line) {
  if (S.prime() != R.prime()) throw DomainError("mf_on_line: prime mismatch");
  g_line_calls.fetch_add(1, std::memory_order_relaxed);
  const Prime p = S.prime();
  const std::uint32_t n = p.value();
  const auto& roots = unit_roots(p);
  const Residue tau0 = line.offset.tau % n;
  const Residue omega0 = line.offset.omega % n;

  LineProfile profile{line, {}};
  if (line.is_vertical()) {
    std::vector<Complex> u(n);
    for (Residue t = 0; t < n; ++t) {
      u[t] = roots[mul(p, omega0, t)] * S[add(p, t, tau0)] * std::conj(R[t]);
    }
    profile.values = dft_plan(p).transform(u, Direction::kForward);
    return profile;
  }

  const Residue m = line.slope % n;
  const Residue half_m = mul(p, inv(p, 2), m);
  const Residue c = sub(p, omega0, mul(p, m, tau0));
  Signal a(p), b(p);
  for (Residue t = 0; t < n; ++t) {
    const Complex q = roots[mul(p, half_m, mul(p, t, t))];
    a[t] = q * S[t];
    b[t] = q * R[t] * roots[neg(p, mul(p, c, t))];
  }
  const auto corr = cross_correlate(a, b);
  profile.values.resize(n);
  for (Residue t = 0; t < n; ++t) {
    const Residue tau = add(p, tau0, t);
    const Complex q_tau = roots[mul(p, half_m, mul(p, tau, tau))];
    profile.values[t] = std::conj(q_tau) * corr[tau];
  }
  return profile;
}

std::uint64_t mf_on_line_calls() { return g_line_calls.load(std::memory_order_relaxed); }
void reset_mf_on_line_calls() { g_line_calls.store(0, std::memory_order_relaxed); }

}  // namespace tfshift
