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

#include <optional>
#include <span>
#include <vector>

#include "tfshift/fastmf.hpp"
#include "tfshift/heisenberg.hpp"
#include "tfshift/signal.hpp"
#include "tfshift/weil.hpp"

namespace tfshift {

// theta1 gates the line-finding level (~1), theta2 the peak level (~2).
// They only set Detection::confident; the decisions are argmax.
struct Thresholds {
  double stage1 = 0.5;
  double peak = 1.5;
};

struct Detection {
  PlanePoint shift;
  double magnitude = 0.0;         // |M| at the reported shift
  double stage1_magnitude = 0.0;  // |M| at the line-finding point
  bool confident = false;
};

struct BitDecision {
  int bit = 1;
  Complex soft;  // M[S_k, R](shift) / 2
  Detection detection;
};

// What a detector needs to know about a sender: its samples and the origin
// line(s) its ambiguity is concentrated on.
struct Waveform {
  enum class Kind { kFlag, kCross };

  Kind kind;
  Signal signal;
  Line line;                         // L for both kinds
  std::optional<Line> second_line;   // M for crosses

  static Waveform from(const Flag& flag);
  static Waveform from(const Cross& cross);
};

// Successor slope for Slope(m); Slope(0) for the vertical line.
Line transverse_line(Prime p, const Line& line);

// Two-stage flag search: argmax on the transverse origin line finds a point
// of the shifted line L + shift, argmax along that shifted line finds the
// shift. Two mf_on_line calls when that peak reaches th.peak. Otherwise |M|^2
// is accumulated per shifted line over eight transverse profiles and the 8
// top scoring shifted lines are scanned; the strongest peak is kept and its
// stage1_magnitude is the RMS level of its line over those profiles.
Detection flag_detect(const Signal& R, const Signal& S, const Line& line, Thresholds th = {});
Detection flag_detect(const Signal& R, const Flag& flag, Thresholds th = {});

// Cross search: argmax along the origin line M hits L + shift (or the shift
// itself when it lies on M); then argmax along the L-direction line. Same
// rescan rule as flag_detect.
Detection cross_detect(const Signal& R, const Signal& S, const Line& l, const Line& m,
                       Thresholds th = {});
Detection cross_detect(const Signal& R, const Cross& cross, Thresholds th = {});

Detection detect(const Signal& R, const Waveform& w, Thresholds th = {});

// Per sender: detect on magnitudes, then read the bit from the sign of
// Re M[S_k, R](shift) / 2.
std::vector<BitDecision> extract_bits(const Signal& R, std::span<const Waveform> family,
                                      Thresholds th = {});

struct GpsFix {
  int bit = 1;
  Residue tau = 0;
  Residue omega = 0;  // auxiliary
  BitDecision decision;
};

std::vector<GpsFix> gps_solve(const Signal& R, std::span<const Waveform> family,
                              Thresholds th = {});

struct RadarResult {
  std::vector<Detection> targets;
  bool complete = false;  // r candidates above theta were found
};

// Multi-target radar with one flag: points of the transverse profile with
// |M| >= theta index shifted lines. Two shifted lines may cross the profile at
// adjacent points, so no neighbour suppression is applied. Candidates are
// scanned strongest first until r distinct peaks >= peak_threshold are found.
// 1 + (scanned candidates) mf_on_line calls.
RadarResult radar_detect(const Signal& R, const Signal& S, const Line& line, std::size_t r,
                         double theta = 0.5, double peak_threshold = 1.5);
RadarResult radar_detect(const Signal& R, const Flag& flag, std::size_t r, double theta = 0.5,
                         double peak_threshold = 1.5);

}  // namespace tfshift
