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

#include <iosfwd>
#include <map>
#include <string>

namespace tfshift::cli {

// Stable exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kLowConfidence = 1,
  kUsageError = 2,
  kConstructionError = 3,
};

// Entry point for the `tfshift` tool: gen, ambiguity, detect, simulate, bench.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Flat "key = value" config; '#' starts a comment. Throws on malformed lines.
std::map<std::string, std::string> parse_config(std::istream& is);

}  // namespace tfshift::cli
