// Copyright 2026 The splp-cmcs Authors
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

#ifndef SPLP_SOLUTION_IO_H_
#define SPLP_SOLUTION_IO_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "splp/instance.h"

namespace splp {

// Solution file: line 1 "value <v>", line 2 the opened sites, 1-based,
// space-separated, ascending. Sites are zero-based in memory.
struct SolutionRecord {
  Money value = 0;
  std::vector<SiteIndex> sites;
};

// Throws ParseError with a line number. Sites may come in any order and are
// returned sorted; duplicates and indices below 1 are rejected.
SolutionRecord parse_solution(std::string_view text);
std::string write_solution(Money value, std::span<const SiteIndex> sites);

SolutionRecord read_solution_file(const std::filesystem::path& path);

}  // namespace splp

#endif  // SPLP_SOLUTION_IO_H_
