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

#include "splp/solution_io.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "splp/instance_io.h"

namespace splp {

namespace {

template <typename T>
bool parse_number(std::string_view token, T& out) {
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && end == token.data() + token.size();
}

std::vector<std::string_view> words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

}  // namespace

SolutionRecord parse_solution(std::string_view text) {
  std::vector<std::pair<int, std::vector<std::string_view>>> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++number;
    auto tokens = words(text.substr(pos, end - pos));
    if (!tokens.empty()) lines.emplace_back(number, std::move(tokens));
    pos = end + 1;
  }
  if (lines.empty()) throw ParseError(1, "empty solution file");
  const auto& [header_line, header] = lines[0];
  SolutionRecord record;
  if (header.size() != 2 || header[0] != "value" || !parse_number(header[1], record.value)) {
    throw ParseError(header_line, "expected 'value <v>'");
  }
  if (lines.size() < 2) throw ParseError(header_line, "missing opened-site line");
  if (lines.size() > 2) throw ParseError(lines[2].first, "unexpected trailing line");
  for (auto token : lines[1].second) {
    SiteIndex site = 0;
    if (!parse_number(token, site) || site < 1) {
      throw ParseError(lines[1].first, "invalid site index '" + std::string(token) + "'");
    }
    record.sites.push_back(site - 1);
  }
  std::sort(record.sites.begin(), record.sites.end());
  if (std::adjacent_find(record.sites.begin(), record.sites.end()) != record.sites.end()) {
    throw ParseError(lines[1].first, "duplicate site index");
  }
  return record;
}

std::string write_solution(Money value, std::span<const SiteIndex> sites) {
  std::vector<SiteIndex> sorted(sites.begin(), sites.end());
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream out;
  out << "value " << value << '\n';
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (k) out << ' ';
    out << sorted[k] + 1;
  }
  out << '\n';
  return out.str();
}

SolutionRecord read_solution_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_solution(text);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

}  // namespace splp
