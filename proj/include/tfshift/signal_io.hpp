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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tfshift/fastmf.hpp"
#include "tfshift/signal.hpp"

namespace tfshift {

// Payload encoding shared by signal and grid files: decimal text, or packed
// little-endian IEEE-754 doubles after the newline-terminated header.
enum class PayloadFormat { kText, kBinary };

// Header: "tfshift-signal p=<p> format=<text|binary> kind=<...> [key=value ...]\n"
// Text payload: p lines "<re> <im>". Binary payload: p interleaved (re, im).
struct SignalFile {
  std::map<std::string, std::string> header;  // descriptor fields, excluding p and format
  PayloadFormat format = PayloadFormat::kText;
  Signal signal;

  const std::string& field(const std::string& key) const;
  bool has(const std::string& key) const { return header.count(key) != 0; }
};

void write_signal_file(std::ostream& os, const SignalFile& file);
SignalFile read_signal_file(std::istream& is);
void save_signal_file(const std::filesystem::path& path, const SignalFile& file);
SignalFile load_signal_file(const std::filesystem::path& path);

// Header: "tfshift-grid p=<p> format=<csv|binary>\n", then p rows (tau) of p
// magnitudes (omega), (0,0) first.
void write_grid(std::ostream& os, const MFMatrix& m, PayloadFormat format);

struct Grid {
  std::uint32_t p = 0;
  std::vector<double> magnitudes;  // row-major, row = tau

  double at(Residue tau, Residue omega) const { return magnitudes[std::size_t{tau} * p + omega]; }
};
Grid read_grid(std::istream& is);

// Header: "tfshift-line p=<p> line=<spec> offset=<tau>,<omega>\n", then
// CSV rows "t,tau,omega,re,im,abs".
void write_line_profile(std::ostream& os, Prime p, const LineProfile& profile);

// "vertical" or "slope:<m>" (a bare integer is read as a slope).
std::string format_line(const Line& line);
Line parse_line(Prime p, std::string_view text);

}  // namespace tfshift
