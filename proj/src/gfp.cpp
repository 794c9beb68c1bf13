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

#include "tfshift/gfp.hpp"

#include <limits>

#include "tfshift/errors.hpp"

namespace tfshift {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::uint64_t value) {
  if (value < 3 || value > std::numeric_limits<std::uint32_t>::max() / 2 ||
      !is_prime(value)) {
    throw DomainError("not an odd prime: " + std::to_string(value));
  }
  value_ = static_cast<std::uint32_t>(value);
}

Residue reduce(Prime p, std::int64_t a) {
  const std::int64_t m = p.value();
  std::int64_t r = a % m;
  if (r < 0) r += m;
  return static_cast<Residue>(r);
}

Residue add(Prime p, Residue a, Residue b) {
  const std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<Residue>(s >= p.value() ? s - p.value() : s);
}

Residue sub(Prime p, Residue a, Residue b) {
  return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + p.value() - b);
}

Residue neg(Prime p, Residue a) { return a == 0 ? 0 : p.value() - a; }

Residue mul(Prime p, Residue a, Residue b) {
  return static_cast<Residue>(std::uint64_t{a} * b % p.value());
}

Residue pow(Prime p, Residue a, std::uint64_t e) {
  std::uint64_t result = 1 % p.value();
  std::uint64_t base = a % p.value();
  while (e > 0) {
    if (e & 1) result = result * base % p.value();
    base = base * base % p.value();
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

Residue inv(Prime p, Residue a) {
  if (a % p.value() == 0) throw DomainError("inverse of zero in F_p");
  return pow(p, a, p.value() - 2);
}

int legendre(Prime p, Residue a) {
  a %= p.value();
  if (a == 0) return 0;
  return pow(p, a, (p.value() - 1) / 2) == 1 ? 1 : -1;
}

Residue primitive_root(Prime p) {
  std::vector<std::uint32_t> factors;
  std::uint32_t n = p.value() - 1;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) factors.push_back(n);
  for (Residue g = 2; g < p.value(); ++g) {
    bool generator = true;
    for (auto q : factors) {
      if (pow(p, g, (p.value() - 1) / q) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  throw InternalError("no primitive root found mod " + std::to_string(p.value()));
}

std::string to_string(const PlanePoint& v) {
  return "(" + std::to_string(v.tau) + "," + std::to_string(v.omega) + ")";
}

std::string to_string(const Line& line) {
  std::string s = line.is_vertical() ? "vertical" : "slope " + std::to_string(line.slope);
  if (!line.through_origin()) s += " through " + to_string(line.offset);
  return s;
}

std::vector<Line> lines_through_origin(Prime p) {
  std::vector<Line> lines;
  lines.reserve(p.value() + 1);
  for (Residue m = 0; m < p.value(); ++m) lines.push_back(Line::slope_line(m));
  lines.push_back(Line::vertical());
  return lines;
}

PlanePoint line_point(Prime p, const Line& line, Residue t) {
  if (line.is_vertical()) {
    return {line.offset.tau, add(p, line.offset.omega, t)};
  }
  return {add(p, line.offset.tau, t), add(p, line.offset.omega, mul(p, line.slope, t))};
}

std::vector<PlanePoint> line_points(Prime p, const Line& line) {
  std::vector<PlanePoint> pts;
  pts.reserve(p.value());
  for (Residue t = 0; t < p.value(); ++t) pts.push_back(line_point(p, line, t));
  return pts;
}

bool line_contains(Prime p, const Line& line, const PlanePoint& v) {
  const Residue dtau = sub(p, v.tau % p.value(), line.offset.tau);
  const Residue domega = sub(p, v.omega % p.value(), line.offset.omega);
  if (line.is_vertical()) return dtau == 0;
  return domega == mul(p, line.slope, dtau);
}

Line line_through(const Line& line, const PlanePoint& v) {
  return Line{line.kind, line.slope, v};
}

bool same_point_set(Prime p, const Line& a, const Line& b) {
  return a.kind == b.kind && a.slope == b.slope && line_contains(p, a, b.offset);
}

}  // namespace tfshift
