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

#include "tfshift/dft.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "tfshift/errors.hpp"

namespace tfshift {
namespace {

std::atomic<std::uint64_t> g_op_count{0};

template <typename T>
class PerPrimeCache {
 public:
  const T& get(Prime p) {
    std::lock_guard lock(mutex_);
    auto& slot = entries_[p.value()];
    if (!slot) slot = std::make_unique<T>(p);
    return *slot;
  }

 private:
  std::mutex mutex_;
  std::map<std::uint32_t, std::unique_ptr<T>> entries_;
};

struct RootTable {
  explicit RootTable(Prime p) : roots(p.value()) {
    const double step = 2.0 * std::numbers::pi / p.value();
    for (std::uint32_t k = 0; k < p.value(); ++k) roots[k] = std::polar(1.0, step * k);
  }
  std::vector<Complex> roots;
};

}  // namespace

const std::vector<Complex>& unit_roots(Prime p) {
  static PerPrimeCache<RootTable> cache;
  return cache.get(p).roots;
}

DftPlan::DftPlan(Prime p) : p_(p) {
  const std::uint32_t n = p.value() - 1;
  // Linear convolution of two length-n sequences fits in M >= 2n - 1.
  conv_size_ = 1;
  log2_size_ = 0;
  while (conv_size_ < 2 * std::size_t{n} - 1) {
    conv_size_ <<= 1;
    ++log2_size_;
  }

  const Residue g = primitive_root(p);
  const Residue g_inv = inv(p, g);
  gen_powers_.resize(n);
  gen_inv_powers_.resize(n);
  Residue acc = 1, acc_inv = 1;
  for (std::uint32_t q = 0; q < n; ++q) {
    gen_powers_[q] = acc;
    gen_inv_powers_[q] = acc_inv;
    acc = mul(p, acc, g);
    acc_inv = mul(p, acc_inv, g_inv);
  }

  bit_reverse_.resize(conv_size_);
  for (std::size_t i = 0; i < conv_size_; ++i) {
    std::uint32_t r = 0;
    for (std::size_t b = 0; b < log2_size_; ++b) {
      if (i & (std::size_t{1} << b)) r |= 1u << (log2_size_ - 1 - b);
    }
    bit_reverse_[i] = r;
  }
  twiddles_.resize(conv_size_ / 2);
  for (std::size_t k = 0; k < conv_size_ / 2; ++k) {
    twiddles_[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) /
                                       static_cast<double>(conv_size_));
  }

  // Kernel b[j] = w^{g^{-j}}, wrapped so the padded linear convolution
  // reproduces the length-n cyclic one on its first n outputs.
  const auto& roots = unit_roots(p);
  auto build_kernel = [&](bool forward) {
    std::vector<Complex> b(conv_size_, Complex{});
    for (std::uint32_t j = 0; j < n; ++j) {
      const Residue e = forward ? gen_inv_powers_[j] : neg(p, gen_inv_powers_[j]);
      b[j] = roots[e];
      if (j > 0) b[conv_size_ - n + j] = roots[e];
    }
    fft_pow2(b, false);
    return b;
  };
  kernel_forward_ = build_kernel(true);
  kernel_inverse_ = build_kernel(false);
}

void DftPlan::fft_pow2(std::vector<Complex>& a, bool conjugate_twiddles) const {
  const std::size_t m = conv_size_;
  for (std::size_t i = 0; i < m; ++i) {
    if (i < bit_reverse_[i]) std::swap(a[i], a[bit_reverse_[i]]);
  }
  for (std::size_t len = 2; len <= m; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = m / len;
    for (std::size_t start = 0; start < m; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        Complex w = twiddles_[k * stride];
        if (conjugate_twiddles) w = std::conj(w);
        const Complex u = a[start + k];
        const Complex v = a[start + k + half] * w;
        a[start + k] = u + v;
        a[start + k + half] = u - v;
      }
    }
  }
  g_op_count.fetch_add((m / 2) * log2_size_, std::memory_order_relaxed);
}

std::vector<Complex> DftPlan::transform(std::span<const Complex> x, Direction dir) const {
  const std::uint32_t p = p_.value();
  if (x.size() != p) {
    throw DomainError("dft length " + std::to_string(x.size()) + " does not match p = " +
                      std::to_string(p));
  }
  const std::uint32_t n = p - 1;
  const bool forward = dir == Direction::kForward;

  std::vector<Complex> a(conv_size_, Complex{});
  Complex total = x[0];
  for (std::uint32_t q = 0; q < n; ++q) {
    a[q] = x[gen_powers_[q]];
    total += a[q];
  }
  fft_pow2(a, false);
  const auto& kernel = forward ? kernel_forward_ : kernel_inverse_;
  for (std::size_t i = 0; i < conv_size_; ++i) a[i] *= kernel[i];
  fft_pow2(a, true);

  std::vector<Complex> out(p);
  out[0] = total;
  const double conv_scale = 1.0 / static_cast<double>(conv_size_);
  for (std::uint32_t j = 0; j < n; ++j) {
    out[gen_inv_powers_[j]] = x[0] + a[j] * conv_scale;
  }
  if (!forward) {
    const double scale = 1.0 / p;
    for (auto& v : out) v *= scale;
  }
  g_op_count.fetch_add(conv_size_ + 3 * std::uint64_t{p}, std::memory_order_relaxed);
  return out;
}

const DftPlan& dft_plan(Prime p) {
  static PerPrimeCache<DftPlan> cache;
  return cache.get(p);
}

std::vector<Complex> dft(Prime p, std::span<const Complex> x, Direction dir) {
  return dft_plan(p).transform(x, dir);
}

std::uint64_t dft_op_count() { return g_op_count.load(std::memory_order_relaxed); }
void reset_dft_op_count() { g_op_count.store(0, std::memory_order_relaxed); }

}  // namespace tfshift
