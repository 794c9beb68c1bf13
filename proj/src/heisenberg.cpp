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

#include "tfshift/heisenberg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "tfshift/errors.hpp"
#include "tfshift/random.hpp"

namespace tfshift {
namespace {

void require_origin_line(const Line& line) {
  if (!line.through_origin()) {
    throw DomainError("Heisenberg basis requires a line through the origin, got " +
                      to_string(line));
  }
}

}  // namespace

HeisenbergVector line_basis_vector(Prime p, const Line& line, Residue b) {
  require_origin_line(line);
  b %= p.value();
  if (line.is_vertical()) return {line, b, Signal::delta(p, b)};

  const auto& roots = unit_roots(p);
  const Residue alpha = neg(p, mul(p, inv(p, 2), line.slope % p.value()));
  const double amp = 1.0 / std::sqrt(static_cast<double>(p.value()));
  Signal f(p);
  for (Residue t = 0; t < p.value(); ++t) {
    const Residue e = add(p, mul(p, alpha, mul(p, t, t)), mul(p, b, t));
    f[t] = amp * roots[e];
  }
  return {line, b, std::move(f)};
}

std::vector<HeisenbergVector> line_basis(Prime p, const Line& line) {
  require_origin_line(line);
  std::vector<HeisenbergVector> basis;
  basis.reserve(p.value());
  for (Residue b = 0; b < p.value(); ++b) basis.push_back(line_basis_vector(p, line, b));
  return basis;
}

std::vector<HeisenbergVector> line_basis_oracle(Prime p, const Line& line) {
  require_origin_line(line);
  const std::uint32_t n = p.value();
  const PlanePoint generator = line_point(p, line, 1);

  Eigen::MatrixXcd op(n, n);
  for (Residue j = 0; j < n; ++j) {
    const Signal col = heisenberg_op(Signal::delta(p, j), generator);
    for (Residue i = 0; i < n; ++i) op(i, j) = col[i];
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(op, true);
  if (solver.info() != Eigen::Success) throw InternalError("eigensolver failed");

  const auto& values = solver.eigenvalues();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto angle = [&](std::size_t k) {
    const double a = std::arg(values[static_cast<Eigen::Index>(k)]);
    return a < 0 ? a + 2 * std::numbers::pi : a;
  };
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return angle(x) < angle(y); });

  // Eigenvalues are distinct p-th roots of unity up to a common phase.
  const double min_gap = std::numbers::pi / n;
  for (std::size_t k = 0; k < n; ++k) {
    const auto a = values[static_cast<Eigen::Index>(order[k])];
    const auto b = values[static_cast<Eigen::Index>(order[(k + 1) % n])];
    if (n > 1 && std::abs(a - b) < min_gap) {
      throw InternalError("eigenvalues of pi(l0) are not separated");
    }
  }

  std::vector<HeisenbergVector> basis;
  basis.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = solver.eigenvectors().col(static_cast<Eigen::Index>(order[k])).normalized();
    Signal f(p);
    for (Residue i = 0; i < n; ++i) f[i] = v(i);
    basis.push_back({line, static_cast<Residue>(k), std::move(f)});
  }
  return basis;
}

Cross cross_waveform(Prime p, const Line& l, const Line& m, Residue b_l, Residue b_m) {
  require_origin_line(l);
  require_origin_line(m);
  if (l == m) throw DomainError("cross requires two distinct lines, got " + to_string(l) + " twice");
  auto f_l = line_basis_vector(p, l, b_l);
  auto f_m = line_basis_vector(p, m, b_m);
  Signal sum = f_l.signal + f_m.signal;
  return {l, m, std::move(f_l), std::move(f_m), std::move(sum)};
}

std::vector<Cross> cross_family(Prime p, std::uint64_t seed) {
  const auto lines = lines_through_origin(p);  // already in key order
  Rng rng(seed);
  std::uniform_int_distribution<Residue> index(0, p.value() - 1);
  std::vector<Cross> family;
  family.reserve(lines.size() / 2);
  for (std::size_t i = 0; i + 1 < lines.size(); i += 2) {
    const Residue b_l = index(rng);
    const Residue b_m = index(rng);
    family.push_back(cross_waveform(p, lines[i], lines[i + 1], b_l, b_m));
  }
  return family;
}

}  // namespace tfshift
