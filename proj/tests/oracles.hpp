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

// Brute-force reference computations. These use only std::polar and direct
// sums, never the library's root tables or transforms.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace tfshift::oracle {

using C = std::complex<double>;

inline C e(std::int64_t k, std::uint32_t p) {
  const std::int64_t r = ((k % p) + p) % p;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / p);
}

inline std::uint32_t brute_inverse(std::uint32_t a, std::uint32_t p) {
  for (std::uint32_t x = 1; x < p; ++x) {
    if (std::uint64_t{a} * x % p == 1) return x;
  }
  return 0;
}

// X[k] = sum_t x[t] e^{sign 2 pi i k t / p}.
inline std::vector<C> direct_dft(const std::vector<C>& x, int sign) {
  const auto p = static_cast<std::uint32_t>(x.size());
  std::vector<C> out(p);
  for (std::uint32_t k = 0; k < p; ++k) {
    C acc{};
    for (std::uint32_t t = 0; t < p; ++t) {
      acc += x[t] * e(sign * static_cast<std::int64_t>(std::uint64_t{k} * t % p), p);
    }
    out[k] = acc;
  }
  return out;
}

inline std::vector<C> direct_xcorr(const std::vector<C>& a, const std::vector<C>& b) {
  const auto p = a.size();
  std::vector<C> out(p);
  for (std::size_t tau = 0; tau < p; ++tau) {
    for (std::size_t t = 0; t < p; ++t) out[tau] += a[(t + tau) % p] * std::conj(b[t]);
  }
  return out;
}

// sum_t e(omega t) S(t + tau) conj(R(t)).
inline C mf(const std::vector<C>& s, const std::vector<C>& r, std::uint32_t tau, std::uint32_t omega) {
  const auto p = static_cast<std::uint32_t>(s.size());
  C acc{};
  for (std::uint32_t t = 0; t < p; ++t) {
    acc += e(static_cast<std::int64_t>(std::uint64_t{omega} * t % p), p) * s[(t + tau) % p] * std::conj(r[t]);
  }
  return acc;
}

}  // namespace tfshift::oracle
