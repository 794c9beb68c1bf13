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
#include <span>
#include <vector>

#include "tfshift/dft.hpp"
#include "tfshift/gfp.hpp"

namespace tfshift {

// An element of C(F_p): p complex samples indexed by t in F_p.
class Signal {
 public:
  explicit Signal(Prime p) : p_(p), samples_(p.value()) {}
  Signal(Prime p, std::vector<Complex> samples);

  static Signal delta(Prime p, Residue at);
  static Signal constant(Prime p, Complex value);

  Prime prime() const { return p_; }
  std::size_t size() const { return samples_.size(); }

  Complex& operator[](std::size_t t) { return samples_[t]; }
  const Complex& operator[](std::size_t t) const { return samples_[t]; }
  std::span<const Complex> samples() const { return samples_; }
  std::span<Complex> samples() { return samples_; }

  double norm() const;
  double norm_squared() const;
  bool is_normalized(double tol = 1e-12) const;
  Signal normalized() const;

  Signal& operator+=(const Signal& other);
  Signal& operator-=(const Signal& other);
  Signal& operator*=(Complex scale);

 private:
  Prime p_;
  std::vector<Complex> samples_;
};

Signal operator+(Signal a, const Signal& b);
Signal operator-(Signal a, const Signal& b);
Signal operator*(Complex scale, Signal a);

// <f1, f2> = sum_t f1(t) conj(f2(t)).
Complex inner(const Signal& f1, const Signal& f2);

// L_tau f(t) = f(t + tau).
Signal time_shift(const Signal& f, Residue tau);
// M_omega f(t) = e^{2 pi i omega t / p} f(t).
Signal modulate(const Signal& f, Residue omega);
// pi(tau, omega) = M_omega o L_tau.
Signal heisenberg_op(const Signal& f, PlanePoint v);
// e^{2 pi i 2^{-1} tau omega / p} pi(tau, omega). Its cocycle is half the
// symplectic form, which makes it equivariant under SL_2(F_p).
Signal heisenberg_op_symmetric(const Signal& f, PlanePoint v);

// Ambiguity matrix M[S,R](tau, omega) = <pi(tau, omega) S, R>, stored
// row-major with row = tau and column = omega.
class MFMatrix {
 public:
  explicit MFMatrix(Prime p) : p_(p), entries_(std::size_t{p.value()} * p.value()) {}

  Prime prime() const { return p_; }
  Complex& at(Residue tau, Residue omega) { return entries_[index(tau, omega)]; }
  const Complex& at(Residue tau, Residue omega) const { return entries_[index(tau, omega)]; }
  Complex at(PlanePoint v) const { return at(v.tau, v.omega); }
  std::span<Complex> row(Residue tau) {
    return std::span<Complex>(entries_).subspan(std::size_t{tau} * p_.value(), p_.value());
  }
  std::span<const Complex> entries() const { return entries_; }

  // Location of the largest magnitude; ties resolved by row-major order.
  PlanePoint argmax() const;

 private:
  std::size_t index(Residue tau, Residue omega) const {
    return std::size_t{tau} * p_.value() + omega;
  }
  Prime p_;
  std::vector<Complex> entries_;
};

// Single entry by its O(p) defining sum.
Complex mf_entry(const Signal& S, const Signal& R, PlanePoint v);

// All p^2 entries, one forward DFT per delay row: O(p^2 log p).
MFMatrix mf_full(const Signal& S, const Signal& R);

// Complex white Gaussian noise, E|W(t)|^2 = sigma^2 (sigma^2 / 2 per real
// component), deterministic given the seed.
Signal awgn(Prime p, double sigma, std::uint64_t seed);

// Unit-norm signal with i.i.d. uniform phases.
Signal random_phase_signal(Prime p, std::uint64_t seed);

}  // namespace tfshift
