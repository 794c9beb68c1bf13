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
#include <vector>

#include "tfshift/gfp.hpp"
#include "tfshift/signal.hpp"

namespace tfshift {

// Ambiguity values along a line, indexed by the canonical line parameter:
// values[t] = M[S,R](line_point(line, t)).
struct LineProfile {
  Line line;
  std::vector<Complex> values;

  // Parameter of the largest magnitude (first on ties).
  Residue argmax() const;
};

// C[tau] = sum_t A(t + tau) conj(B(t)), via three prime-length DFTs.
std::vector<Complex> cross_correlate(const Signal& A, const Signal& B);

// The p values of M[S,R] on an arbitrary (possibly shifted) line in
// O(p log p).
//
// Vertical {(tau0, omega)}: one forward DFT of S(t + tau0) conj(R(t)).
// Slope m, omega = m tau + c: the bilinear phase e(m tau t) factors through
// the chirp q(t) = e(2^{-1} m t^2) as q(t + tau) conj(q(t)) conj(q(tau)),
// turning the row into a plain cross-correlation of q S against
// q R e(-c t).
LineProfile mf_on_line(const Signal& S, const Signal& R, const Line& line);

// Number of mf_on_line evaluations since the last reset (all threads).
std::uint64_t mf_on_line_calls();
void reset_mf_on_line_calls();

}  // namespace tfshift
