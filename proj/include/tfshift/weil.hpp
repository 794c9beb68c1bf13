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

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "tfshift/gfp.hpp"
#include "tfshift/heisenberg.hpp"
#include "tfshift/signal.hpp"

namespace tfshift {

// Element of SL_2(F_p) acting on column vectors (tau, omega).
class GroupElement {
 public:
  // Throws DomainError unless ad - bc = 1.
  GroupElement(Prime p, Residue a, Residue b, Residue c, Residue d);

  static GroupElement identity(Prime p) { return {p, 1, 0, 0, 1}; }

  Prime prime() const { return p_; }
  Residue a() const { return a_; }
  Residue b() const { return b_; }
  Residue c() const { return c_; }
  Residue d() const { return d_; }
  Residue trace() const { return add(p_, a_, d_); }

  PlanePoint apply(PlanePoint v) const;
  GroupElement inverse() const;
  GroupElement pow(std::uint64_t e) const;
  bool is_identity() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }

  friend GroupElement operator*(const GroupElement& x, const GroupElement& y);
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  Prime p_;
  Residue a_, b_, c_, d_;
};

// Unitary rho(g) solving rho(g) pi_s(v) = pi_s(g v) rho(g) for all v, where
// pi_s is the symmetric Heisenberg operator. Global phase: first nonzero
// entry in row-major order is real positive.
struct WeilOperator {
  GroupElement g;
  Eigen::MatrixXcd matrix;

  Signal apply(const Signal& f) const;
};

WeilOperator weil_operator(const GroupElement& g);

enum class TorusKind { kSplit, kNonsplit };

struct Torus {
  GroupElement generator;
  TorusKind kind;
  std::uint32_t order;                 // p - 1 (split) or p + 1 (nonsplit)
  std::optional<Residue> trace_class;  // set when built by make_torus
};

// Centralizer of [[t, -1], [1, 0]]. Throws DomainError when t^2 = 4.
Torus make_torus(Prime p, Residue trace);
// {diag(a, a^{-1})}, generated by a primitive root.
Torus diagonal_torus(Prime p);
// Torus generated by a regular element of full torus order.
Torus torus_from_generator(const GroupElement& g);
// Two tori coincide iff their generators commute.
bool same_torus(const Torus& a, const Torus& b);

// Non-parabolic trace classes in sweep order 0, 1, 3, 4, ... .
std::vector<Residue> torus_trace_roster(Prime p);

struct WeilVector {
  Torus torus;
  std::size_t index;
  Complex eigenvalue;
  Signal signal;
  bool degenerate;  // drawn from an eigenspace of dimension >= 2
};

// The p eigenvectors of rho(generator), grouped by eigenvalue in order of
// increasing argument. Vectors in multi-dimensional eigenspaces come from a
// Gram-Schmidt pass over projected delta functions and are flagged.
std::vector<WeilVector> torus_eigenbasis(const Torus& torus);

struct Flag {
  Line line;
  Torus torus;
  HeisenbergVector f_l;
  WeilVector phi_t;
  Signal signal;
};

// S_L = f_L + phi_T. Throws DomainError for a degenerate Weil vector.
Flag make_flag(HeisenbergVector f_l, WeilVector phi_t);
Flag flag_waveform(Prime p, const Line& line, const Torus& torus, Residue b_index,
                   std::size_t eig_index);

// r flags on distinct lines (canonical order) with distinct non-degenerate
// Weil vectors. Flag i uses torus i mod k from the first k = min(r, roster)
// trace classes; eigenvector and line-character choices come from the seed.
// Eigenvectors whose flag keeps every point of L above every point off L are
// taken first, so noiseless two-stage detection cannot miss.
std::vector<Flag> flag_family(Prime p, std::size_t r, std::uint64_t seed,
                              std::size_t max_roster = 8);

}  // namespace tfshift
