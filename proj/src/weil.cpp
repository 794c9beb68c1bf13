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

#include "tfshift/weil.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <iterator>
#include <numbers>
#include <numeric>

#include "tfshift/errors.hpp"
#include "tfshift/random.hpp"

namespace tfshift {
namespace {

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Multiplicative order of g, given that it divides `bound`.
std::uint32_t element_order(const GroupElement& g, std::uint32_t bound) {
  std::uint32_t ord = bound;
  for (auto q : prime_factors(bound)) {
    while (ord % q == 0 && g.pow(ord / q).is_identity()) ord /= q;
  }
  return ord;
}

std::uint32_t torus_order(Prime p, int kind_symbol) {
  return kind_symbol > 0 ? p.value() - 1 : p.value() + 1;
}

double angle_of(Complex z) {
  const double a = std::arg(z);
  return a < 0 ? a + 2 * std::numbers::pi : a;
}

Signal column_signal(Prime p, const Eigen::VectorXcd& v) {
  Signal s(p);
  for (Residue i = 0; i < p.value(); ++i) s[i] = v(i);
  return s;
}

// Unit phase making the first non-negligible sample real positive.
void fix_phase(Eigen::VectorXcd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-6) {
      v *= std::conj(v(i)) / std::abs(v(i));
      return;
    }
  }
}

// min |M[S,S]| on L minus the origin exceeds max |M[S,S]| off L.
bool separates_line(const Flag& flag) {
  const Prime p = flag.signal.prime();
  const MFMatrix m = mf_full(flag.signal, flag.signal);
  double on = 2.0, off = 0.0;
  for (Residue tau = 0; tau < p.value(); ++tau) {
    for (Residue omega = 0; omega < p.value(); ++omega) {
      if (tau == 0 && omega == 0) continue;
      const double mag = std::abs(m.at(tau, omega));
      if (line_contains(p, flag.line, {tau, omega})) {
        on = std::min(on, mag);
      } else {
        off = std::max(off, mag);
      }
    }
  }
  return on > off;
}

}  // namespace

GroupElement::GroupElement(Prime p, Residue a, Residue b, Residue c, Residue d)
    : p_(p), a_(a % p.value()), b_(b % p.value()), c_(c % p.value()), d_(d % p.value()) {
  if (sub(p, mul(p, a_, d_), mul(p, b_, c_)) != 1) {
    throw DomainError("matrix is not in SL_2: determinant != 1");
  }
}

PlanePoint GroupElement::apply(PlanePoint v) const {
  return {add(p_, mul(p_, a_, v.tau), mul(p_, b_, v.omega)),
          add(p_, mul(p_, c_, v.tau), mul(p_, d_, v.omega))};
}

GroupElement GroupElement::inverse() const { return {p_, d_, neg(p_, b_), neg(p_, c_), a_}; }

GroupElement GroupElement::pow(std::uint64_t e) const {
  GroupElement result = identity(p_);
  GroupElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

GroupElement operator*(const GroupElement& x, const GroupElement& y) {
  const Prime p = x.p_;
  return {p, add(p, mul(p, x.a_, y.a_), mul(p, x.b_, y.c_)),
          add(p, mul(p, x.a_, y.b_), mul(p, x.b_, y.d_)),
          add(p, mul(p, x.c_, y.a_), mul(p, x.d_, y.c_)),
          add(p, mul(p, x.c_, y.b_), mul(p, x.d_, y.d_))};
}

Signal WeilOperator::apply(const Signal& f) const {
  const Prime p = f.prime();
  Eigen::Map<const Eigen::VectorXcd> x(f.samples().data(), p.value());
  const Eigen::VectorXcd y = matrix * x;
  return column_signal(p, y);
}

WeilOperator weil_operator(const GroupElement& g) {
  const Prime p = g.prime();
  const std::uint32_t n = p.value();
  const auto& roots = unit_roots(p);
  const Residue half = inv(p, 2);

  // Averaging sum_v pi_s(g v) A pi_s(v)^{-1} over V projects any A onto the
  // one-dimensional solution space. With A = delta_i delta_j^* each term is
  // a single matrix unit:
  //   pi_s(tau, omega) delta_j = e(omega (j - tau) + 2^{-1} tau omega) delta_{j - tau}.
  auto term_exponent = [&](Residue j, Residue tau, Residue omega) {
    return add(p, mul(p, omega, sub(p, j, tau)), mul(p, half, mul(p, tau, omega)));
  };

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  bool found = false;
  for (Residue seed = 0; seed < n * n && !found; ++seed) {
    const Residue i0 = seed / n;
    const Residue j0 = seed % n;
    rho.setZero();
    for (Residue tau = 0; tau < n; ++tau) {
      for (Residue omega = 0; omega < n; ++omega) {
        const PlanePoint gv = g.apply({tau, omega});
        const Residue e = sub(p, term_exponent(i0, gv.tau, gv.omega), term_exponent(j0, tau, omega));
        rho(sub(p, i0, gv.tau), sub(p, j0, tau)) += roots[e];
      }
    }
    found = rho.norm() > 1e-6;
  }
  if (!found) throw InternalError("intertwiner averaging vanished for every seed matrix");

  rho /= rho.norm() / std::sqrt(static_cast<double>(n));
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    bool fixed = false;
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      const Complex z = rho(r, c);
      if (std::abs(z) > 1e-9) {
        rho *= std::conj(z) / std::abs(z);
        fixed = true;
        break;
      }
    }
    if (fixed) break;
  }

  // Probe unitarity with a few deterministic vectors; O(p^2) each.
  Rng rng(n);
  std::normal_distribution<double> gauss;
  for (int probe = 0; probe < 3; ++probe) {
    Eigen::VectorXcd x(n);
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = {gauss(rng), gauss(rng)};
    const Eigen::VectorXcd y = rho.adjoint() * (rho * x);
    if ((y - x).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, x.cwiseAbs().maxCoeff())) {
      throw InternalError("Weil operator failed the unitarity probe");
    }
  }
  return {g, std::move(rho)};
}

Torus make_torus(Prime p, Residue trace) {
  trace %= p.value();
  const int symbol = legendre(p, sub(p, mul(p, trace, trace), 4 % p.value()));
  if (symbol == 0) {
    throw DomainError("trace " + std::to_string(trace) + " is parabolic (t^2 = 4) mod " +
                      std::to_string(p.value()));
  }
  const std::uint32_t order = torus_order(p, symbol);
  // Centralizer of g = [[t, -1], [1, 0]] is {x I + y g : x^2 + t x y + y^2 = 1}.
  for (Residue y = 0; y < p.value(); ++y) {
    for (Residue x = 0; x < p.value(); ++x) {
      const Residue det =
          add(p, add(p, mul(p, x, x), mul(p, trace, mul(p, x, y))), mul(p, y, y));
      if (det != 1) continue;
      const GroupElement h(p, add(p, x, mul(p, y, trace)), neg(p, y), y, x);
      if (element_order(h, order) == order) {
        return {h, symbol > 0 ? TorusKind::kSplit : TorusKind::kNonsplit, order, trace};
      }
    }
  }
  throw InternalError("no generator found in the centralizer of trace " + std::to_string(trace));
}

Torus diagonal_torus(Prime p) {
  const Residue r = primitive_root(p);
  return torus_from_generator(GroupElement(p, r, 0, 0, inv(p, r)));
}

Torus torus_from_generator(const GroupElement& g) {
  const Prime p = g.prime();
  const Residue t = g.trace();
  const int symbol = legendre(p, sub(p, mul(p, t, t), 4 % p.value()));
  if (symbol == 0) throw DomainError("parabolic or central element does not generate a torus");
  const std::uint32_t order = torus_order(p, symbol);
  if (element_order(g, order) != order) {
    throw DomainError("element does not have full torus order " + std::to_string(order));
  }
  return {g, symbol > 0 ? TorusKind::kSplit : TorusKind::kNonsplit, order, std::nullopt};
}

bool same_torus(const Torus& a, const Torus& b) {
  return a.generator * b.generator == b.generator * a.generator;
}

std::vector<Residue> torus_trace_roster(Prime p) {
  std::vector<Residue> traces;
  for (Residue t = 0; t < p.value(); ++t) {
    if (mul(p, t, t) != 4 % p.value()) traces.push_back(t);
  }
  return traces;
}

std::vector<WeilVector> torus_eigenbasis(const Torus& torus) {
  const Prime p = torus.generator.prime();
  const auto n = static_cast<Eigen::Index>(p.value());
  const WeilOperator rho = weil_operator(torus.generator);

  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(rho.matrix, true);
  if (schur.info() != Eigen::Success) throw InternalError("Schur decomposition failed");
  const Eigen::MatrixXcd& q = schur.matrixU();
  const Eigen::MatrixXcd& t = schur.matrixT();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return angle_of(t(x, x)) < angle_of(t(y, y));
  });

  // Cluster equal eigenvalues; the last cluster may wrap onto the first.
  constexpr double kClusterTol = 1e-6;
  std::vector<std::vector<Eigen::Index>> clusters;
  for (auto k : order) {
    if (std::abs(std::abs(t(k, k)) - 1.0) > kClusterTol) {
      throw InternalError("Weil operator eigenvalue off the unit circle");
    }
    if (!clusters.empty() && std::abs(t(k, k) - t(clusters.back().back(), clusters.back().back())) < kClusterTol) {
      clusters.back().push_back(k);
    } else {
      clusters.push_back({k});
    }
  }
  if (clusters.size() > 1 &&
      std::abs(t(clusters.front().front(), clusters.front().front()) -
               t(clusters.back().front(), clusters.back().front())) < kClusterTol) {
    auto tail = std::move(clusters.back());
    clusters.pop_back();
    clusters.front().insert(clusters.front().begin(), tail.begin(), tail.end());
  }

  // Eigenvalues are a common phase times order-th roots of unity.
  const double step = 2 * std::numbers::pi / torus.order;
  const Complex reference = t(clusters.front().front(), clusters.front().front());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const Complex lambda = t(clusters[c].front(), clusters[c].front());
    const double k = std::arg(lambda / reference) / step;
    if (std::abs(k - std::round(k)) > 1e-5) {
      throw InternalError("eigenvalue clusters are inconsistent with the torus order");
    }
  }
  if (clusters.size() > torus.order) throw InternalError("more eigenvalue clusters than characters");

  std::vector<WeilVector> basis;
  basis.reserve(static_cast<std::size_t>(n));
  for (const auto& cluster : clusters) {
    const Complex lambda = t(cluster.front(), cluster.front());
    if (cluster.size() == 1) {
      Eigen::VectorXcd v = q.col(cluster.front());
      fix_phase(v);
      basis.push_back({torus, basis.size(), lambda, column_signal(p, v), false});
      continue;
    }
    Eigen::MatrixXcd span(n, static_cast<Eigen::Index>(cluster.size()));
    for (std::size_t k = 0; k < cluster.size(); ++k) {
      span.col(static_cast<Eigen::Index>(k)) = q.col(cluster[k]);
    }
    std::vector<Eigen::VectorXcd> picked;
    for (Eigen::Index i = 0; i < n && picked.size() < cluster.size(); ++i) {
      Eigen::VectorXcd v = span * span.row(i).adjoint();  // projection of delta_i
      for (const auto& u : picked) v -= u * u.dot(v);
      const double len = v.norm();
      if (len < 1e-6) continue;
      v /= len;
      fix_phase(v);
      picked.push_back(v);
    }
    if (picked.size() != cluster.size()) throw InternalError("degenerate eigenspace orthonormalization failed");
    for (const auto& v : picked) {
      basis.push_back({torus, basis.size(), lambda, column_signal(p, v), true});
    }
  }

  for (const auto& w : basis) {
    Eigen::Map<const Eigen::VectorXcd> x(w.signal.samples().data(), n);
    if ((rho.matrix * x - w.eigenvalue * x).cwiseAbs().maxCoeff() > 1e-8) {
      throw InternalError("torus eigenvector residual above tolerance");
    }
  }
  return basis;
}

Flag make_flag(HeisenbergVector f_l, WeilVector phi_t) {
  if (phi_t.degenerate) {
    throw DomainError("Weil vector " + std::to_string(phi_t.index) +
                      " lies in a degenerate eigenspace; no peak guarantee");
  }
  Signal sum = f_l.signal + phi_t.signal;
  Line line = f_l.line;
  Torus torus = phi_t.torus;
  return {line, std::move(torus), std::move(f_l), std::move(phi_t), std::move(sum)};
}

Flag flag_waveform(Prime p, const Line& line, const Torus& torus, Residue b_index,
                   std::size_t eig_index) {
  auto basis = torus_eigenbasis(torus);
  if (eig_index >= basis.size()) throw DomainError("Weil eigenvector index out of range");
  return make_flag(line_basis_vector(p, line, b_index), std::move(basis[eig_index]));
}

std::vector<Flag> flag_family(Prime p, std::size_t r, std::uint64_t seed, std::size_t max_roster) {
  if (r == 0 || r > p.value() + 1) {
    throw DomainError("flag family size must be in [1, p+1], got " + std::to_string(r));
  }
  const auto lines = lines_through_origin(p);
  const auto traces = torus_trace_roster(p);
  const std::size_t roster = std::min({r, std::max<std::size_t>(max_roster, 1), traces.size()});

  std::vector<std::vector<WeilVector>> bases;
  std::vector<std::vector<std::size_t>> pools;
  for (std::size_t k = 0; k < roster; ++k) {
    bases.push_back(torus_eigenbasis(make_torus(p, traces[k])));
    std::vector<std::size_t> pool;
    for (const auto& w : bases.back()) {
      if (!w.degenerate) pool.push_back(w.index);
    }
    Rng shuffle_rng(substream(seed, k));
    std::shuffle(pool.begin(), pool.end(), shuffle_rng);
    std::reverse(pool.begin(), pool.end());  // consumed from the back
    pools.push_back(std::move(pool));
  }

  Rng rng(substream(seed, 0x5eed));
  std::uniform_int_distribution<Residue> character(0, p.value() - 1);
  std::vector<Flag> family;
  family.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t k = i % roster;
    std::size_t tried = 0;
    while (pools[k].empty() && tried < roster) {
      k = (k + 1) % roster;
      ++tried;
    }
    if (pools[k].empty()) {
      throw DomainError("only " + std::to_string(i) + " non-degenerate Weil vectors available in a roster of " +
                        std::to_string(roster) + " tori; requested " + std::to_string(r));
    }
    auto f_l = line_basis_vector(p, lines[i], character(rng));
    auto& pool = pools[k];
    auto pick = pool.end() - 1;
    for (auto it = pool.rbegin(); it != pool.rend(); ++it) {
      if (separates_line(make_flag(f_l, bases[k][*it]))) {
        pick = std::prev(it.base());
        break;
      }
    }
    const std::size_t eig = *pick;
    pool.erase(pick);
    family.push_back(make_flag(std::move(f_l), bases[k][eig]));
  }
  return family;
}

}  // namespace tfshift
