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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "tfshift/gfp.hpp"

namespace tfshift {

using Complex = std::complex<double>;

enum class Direction { kForward, kInverse };

// e^{2 pi i k / p} for k = 0..p-1, computed once per prime and shared.
const std::vector<Complex>& unit_roots(Prime p);

// Exact root-of-unity lookup: e^{2 pi i k / p} for any integer k.
inline Complex unit_root(Prime p, const std::vector<Complex>& roots, std::int64_t k) {
  return roots[reduce(p, k)];
}

// Prime-length DFT by Rader's algorithm: the p-1 nonzero frequencies are a
// cyclic convolution over the multiplicative group, evaluated with a
// zero-padded power-of-two FFT. The plan is immutable after construction.
//
// Forward:  X[k] = sum_t x[t] e^{+2 pi i k t / p}
// Inverse:  x[t] = (1/p) sum_k X[k] e^{-2 pi i k t / p}
//
// The forward kernel uses the same sign as the matched-filter frequency
// shift, so one forward transform of S(t+tau) conj(R(t)) is a full
// Doppler row of the ambiguity matrix.
class DftPlan {
 public:
  explicit DftPlan(Prime p);

  Prime prime() const { return p_; }
  std::size_t convolution_size() const { return conv_size_; }

  std::vector<Complex> transform(std::span<const Complex> x, Direction dir) const;

 private:
  void fft_pow2(std::vector<Complex>& a, bool conjugate_twiddles) const;

  Prime p_;
  std::size_t conv_size_;
  std::size_t log2_size_;
  std::vector<Residue> gen_powers_;      // g^q, q = 0..p-2
  std::vector<Residue> gen_inv_powers_;  // g^{-a}, a = 0..p-2
  std::vector<std::uint32_t> bit_reverse_;
  std::vector<Complex> twiddles_;        // e^{-2 pi i k / M}, k < M/2
  std::vector<Complex> kernel_forward_;  // padded kernel spectra
  std::vector<Complex> kernel_inverse_;
};

// Cached plan for p; safe to call concurrently.
const DftPlan& dft_plan(Prime p);

std::vector<Complex> dft(Prime p, std::span<const Complex> x, Direction dir);

// Butterfly and pointwise-product counter shared by all plans.
std::uint64_t dft_op_count();
void reset_dft_op_count();

}  // namespace tfshift
