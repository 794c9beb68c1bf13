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

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace tfshift {

// Canonical residue in [0, p).
using Residue = std::uint32_t;

// An odd prime modulus. Construction runs a deterministic primality test.
class Prime {
 public:
  explicit Prime(std::uint64_t value);

  std::uint32_t value() const { return value_; }
  operator std::uint32_t() const { return value_; }

  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  std::uint32_t value_;
};

bool is_prime(std::uint64_t n);

// Arithmetic in F_p. All results are canonical residues.
Residue reduce(Prime p, std::int64_t a);
Residue add(Prime p, Residue a, Residue b);
Residue sub(Prime p, Residue a, Residue b);
Residue neg(Prime p, Residue a);
Residue mul(Prime p, Residue a, Residue b);
Residue pow(Prime p, Residue a, std::uint64_t e);
// Throws DomainError for a == 0.
Residue inv(Prime p, Residue a);
// +1 for nonzero squares, 0 for zero, -1 otherwise.
int legendre(Prime p, Residue a);
// Smallest generator of the multiplicative group F_p^*.
Residue primitive_root(Prime p);

struct PlanePoint {
  Residue tau = 0;
  Residue omega = 0;

  friend auto operator<=>(const PlanePoint&, const PlanePoint&) = default;
};

std::string to_string(const PlanePoint& v);

enum class LineKind { kSlope, kVertical };

// A line in V = F_p x F_p. Slope(m) is {(t, m t)}, Vertical is {(0, t)};
// the offset translates the whole set. Lines through the origin are keyed by
// slope 0..p-1 with Vertical ordered last.
struct Line {
  LineKind kind = LineKind::kSlope;
  Residue slope = 0;
  PlanePoint offset{};

  static Line slope_line(Residue m, PlanePoint offset = {}) {
    return Line{LineKind::kSlope, m, offset};
  }
  static Line vertical(PlanePoint offset = {}) {
    return Line{LineKind::kVertical, 0, offset};
  }

  bool is_vertical() const { return kind == LineKind::kVertical; }
  bool through_origin() const { return offset == PlanePoint{}; }
  // Origin line with the same direction.
  Line direction() const { return Line{kind, slope, {}}; }
  // Position in the canonical origin-line order (slopes first, vertical = p).
  std::uint32_t key(Prime p) const { return is_vertical() ? p.value() : slope; }

  friend bool operator==(const Line&, const Line&) = default;
};

std::string to_string(const Line& line);

std::vector<Line> lines_through_origin(Prime p);

// Point of the line at canonical parameter t.
PlanePoint line_point(Prime p, const Line& line, Residue t);
std::vector<PlanePoint> line_points(Prime p, const Line& line);
bool line_contains(Prime p, const Line& line, const PlanePoint& v);
// Same direction as `line`, translated so that it passes through v.
Line line_through(const Line& line, const PlanePoint& v);
// Two lines with the same direction are equal as point sets iff this holds.
bool same_point_set(Prime p, const Line& a, const Line& b);

}  // namespace tfshift
