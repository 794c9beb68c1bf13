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

#include "tfshift/detect.hpp"

#include <algorithm>
#include <cmath>

#include "tfshift/errors.hpp"

namespace tfshift {
namespace {

constexpr std::size_t kMaxRescans = 8;
constexpr std::size_t kTransverseProfiles = 8;

Detection scan_shifted_line(const Signal& R, const Signal& S, const Line& direction,
                            const PlanePoint& through, double stage1_magnitude, Thresholds th) {
  const Prime p = S.prime();
  const auto profile = mf_on_line(S, R, line_through(direction, through));
  const Residue t = profile.argmax();
  Detection d;
  d.shift = line_point(p, profile.line, t);
  d.magnitude = std::abs(profile.values[t]);
  d.stage1_magnitude = stage1_magnitude;
  d.confident = d.stage1_magnitude >= th.stage1 && d.magnitude >= th.peak;
  return d;
}

// Index of the shifted copy of `direction` through v, and a point on it.
Residue shifted_key(Prime p, const Line& direction, PlanePoint v) {
  return direction.is_vertical() ? v.tau : sub(p, v.omega, mul(p, direction.slope, v.tau));
}

PlanePoint shifted_anchor(const Line& direction, Residue key) {
  return direction.is_vertical() ? PlanePoint{key, 0} : PlanePoint{0, key};
}

// Next origin line after `line` in key order, skipping `direction`.
Line next_transverse(Prime p, const Line& direction, const Line& line) {
  const auto lines = lines_through_origin(p);
  std::uint32_t k = line.key(p);
  do {
    k = (k + 1) % (p.value() + 1);
  } while (lines[k].key(p) == direction.key(p));
  return lines[k];
}

// Stage 2 on the strongest point of the first transverse profile. When that
// peak stays below th.peak, interference has hidden the line hit: |M|^2 is
// then summed per shifted line over several transverse profiles and the best
// scoring shifted lines are scanned.
Detection two_stage(const Signal& R, const Signal& S, const Line& direction, const Line& first,
                    Thresholds th) {
  const Prime p = S.prime();
  const auto stage1 = mf_on_line(S, R, first);
  const Residue t0 = stage1.argmax();
  Detection best = scan_shifted_line(R, S, direction, line_point(p, first, t0),
                                     std::abs(stage1.values[t0]), th);
  if (best.magnitude >= th.peak) return best;

  std::vector<double> score(p.value(), 0.0);
  Line transverse = first;
  for (std::size_t k = 0; k < kTransverseProfiles; ++k) {
    const auto profile = k == 0 ? stage1 : mf_on_line(S, R, transverse);
    for (Residue t = 0; t < p.value(); ++t) {
      score[shifted_key(p, direction, line_point(p, transverse, t))] += std::norm(profile.values[t]);
    }
    transverse = next_transverse(p, direction, transverse);
  }
  std::vector<Residue> keys(p.value());
  for (Residue c = 0; c < p.value(); ++c) keys[c] = c;
  const auto depth = static_cast<std::ptrdiff_t>(std::min<std::size_t>(kMaxRescans, keys.size()));
  std::partial_sort(keys.begin(), keys.begin() + depth, keys.end(),
                    [&](Residue a, Residue b) { return score[a] > score[b]; });
  const Residue skip = shifted_key(p, direction, line_point(p, first, t0));
  for (std::ptrdiff_t k = 0; k < depth; ++k) {
    if (keys[k] == skip) continue;
    const double level = std::sqrt(score[keys[k]] / kTransverseProfiles);
    const Detection d = scan_shifted_line(R, S, direction, shifted_anchor(direction, keys[k]), level, th);
    if (d.magnitude > best.magnitude) best = d;
  }
  return best;
}

}  // namespace

Waveform Waveform::from(const Flag& flag) {
  return {Kind::kFlag, flag.signal, flag.line, std::nullopt};
}

Waveform Waveform::from(const Cross& cross) {
  return {Kind::kCross, cross.signal, cross.line_l, cross.line_m};
}

Line transverse_line(Prime p, const Line& line) {
  if (line.is_vertical()) return Line::slope_line(0);
  return Line::slope_line(add(p, line.slope % p.value(), 1));
}

Detection flag_detect(const Signal& R, const Signal& S, const Line& line, Thresholds th) {
  const Prime p = S.prime();
  const Line direction = line.direction();
  return two_stage(R, S, direction, transverse_line(p, direction), th);
}

Detection flag_detect(const Signal& R, const Flag& flag, Thresholds th) {
  return flag_detect(R, flag.signal, flag.line, th);
}

Detection cross_detect(const Signal& R, const Signal& S, const Line& l, const Line& m,
                       Thresholds th) {
  if (l.direction() == m.direction()) throw DomainError("cross lines must be distinct");
  return two_stage(R, S, l.direction(), m.direction(), th);
}

Detection cross_detect(const Signal& R, const Cross& cross, Thresholds th) {
  return cross_detect(R, cross.signal, cross.line_l, cross.line_m, th);
}

Detection detect(const Signal& R, const Waveform& w, Thresholds th) {
  if (w.kind == Waveform::Kind::kCross) {
    if (!w.second_line) throw DomainError("cross waveform without its second line");
    return cross_detect(R, w.signal, w.line, *w.second_line, th);
  }
  return flag_detect(R, w.signal, w.line, th);
}

std::vector<BitDecision> extract_bits(const Signal& R, std::span<const Waveform> family,
                                      Thresholds th) {
  std::vector<BitDecision> out;
  out.reserve(family.size());
  for (const auto& w : family) {
    BitDecision b;
    b.detection = detect(R, w, th);
    b.soft = mf_entry(w.signal, R, b.detection.shift) / 2.0;
    b.bit = b.soft.real() < 0.0 ? -1 : 1;
    out.push_back(b);
  }
  return out;
}

std::vector<GpsFix> gps_solve(const Signal& R, std::span<const Waveform> family, Thresholds th) {
  std::vector<GpsFix> fixes;
  for (const auto& b : extract_bits(R, family, th)) {
    fixes.push_back({b.bit, b.detection.shift.tau, b.detection.shift.omega, b});
  }
  return fixes;
}

RadarResult radar_detect(const Signal& R, const Signal& S, const Line& line, std::size_t r,
                         double theta, double peak_threshold) {
  const Prime p = S.prime();
  const std::uint32_t n = p.value();
  const Line direction = line.direction();
  const auto stage1 = mf_on_line(S, R, transverse_line(p, direction));

  std::vector<Residue> candidates;
  for (Residue t = 0; t < n; ++t) {
    if (std::abs(stage1.values[t]) >= theta) candidates.push_back(t);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](Residue a, Residue b) {
    return std::abs(stage1.values[a]) > std::abs(stage1.values[b]);
  });

  // Candidates are scanned strongest first; a target needs a confirmed peak.
  RadarResult result;
  const Thresholds th{theta, peak_threshold};
  for (auto t : candidates) {
    if (result.targets.size() == r) break;
    auto d = scan_shifted_line(R, S, direction, line_point(p, stage1.line, t),
                               std::abs(stage1.values[t]), th);
    if (d.magnitude < peak_threshold) continue;
    const bool seen = std::any_of(result.targets.begin(), result.targets.end(),
                                  [&](const Detection& x) { return x.shift == d.shift; });
    if (!seen) result.targets.push_back(d);
  }
  result.complete = result.targets.size() == r;
  return result;
}

RadarResult radar_detect(const Signal& R, const Flag& flag, std::size_t r, double theta,
                         double peak_threshold) {
  return radar_detect(R, flag.signal, flag.line, r, theta, peak_threshold);
}

}  // namespace tfshift
