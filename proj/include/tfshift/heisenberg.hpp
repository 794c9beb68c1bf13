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

// Common eigenfunction of {pi(l) : l in line}; unit norm.
struct HeisenbergVector {
  Line line;
  Residue index;
  Signal signal;
};

// Sum of basis vectors on two distinct origin lines. Not renormalized: the
// ambiguity peak of the raw sum is 2.
struct Cross {
  Line line_l;
  Line line_m;
  HeisenbergVector f_l;
  HeisenbergVector f_m;
  Signal signal;
};

// Closed-form basis vector with character index b:
//   Slope(m):  p^{-1/2} e^{(2 pi i / p)(-2^{-1} m t^2 + b t)}
//   Vertical:  delta_b
HeisenbergVector line_basis_vector(Prime p, const Line& line, Residue b);

// The p vectors of B_L in index order b = 0..p-1.
std::vector<HeisenbergVector> line_basis(Prime p, const Line& line);

// Independent construction by numerically diagonalizing pi(l0) for a
// generator l0 of the line. Vectors are ordered by eigenvalue argument and
// agree with line_basis up to unit phase and permutation.
std::vector<HeisenbergVector> line_basis_oracle(Prime p, const Line& line);

Cross cross_waveform(Prime p, const Line& l, const Line& m, Residue b_l, Residue b_m);

// (p+1)/2 crosses over the canonical disjoint pairing of origin lines
// (consecutive lines in key order); basis indices drawn from the seed.
std::vector<Cross> cross_family(Prime p, std::uint64_t seed);

}  // namespace tfshift
