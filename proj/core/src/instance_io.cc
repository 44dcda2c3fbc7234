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

#include "splp/instance_io.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace splp {

namespace {

struct Token {
  std::string_view text;
  int line;
};

struct Line {
  std::vector<std::string_view> tokens;
  int number;
};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

// Non-empty lines, split on whitespace.
std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(pos, end - pos);
    Line parsed{{}, number};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      std::size_t start = i;
      while (i < line.size() && !is_space(line[i])) ++i;
      if (i > start) parsed.tokens.push_back(line.substr(start, i - start));
    }
    if (!parsed.tokens.empty()) lines.push_back(std::move(parsed));
    pos = end + 1;
  }
  return lines;
}

std::vector<Token> flatten(const std::vector<Line>& lines, std::size_t from) {
  std::vector<Token> tokens;
  for (std::size_t k = from; k < lines.size(); ++k) {
    for (auto t : lines[k].tokens) tokens.push_back({t, lines[k].number});
  }
  return tokens;
}

Money parse_integer(std::string_view token, int line, bool allow_zero_fraction) {
  std::string_view digits = token;
  if (allow_zero_fraction) {
    if (auto dot = token.find('.'); dot != std::string_view::npos) {
      for (char c : token.substr(dot + 1)) {
        if (c != '0') {
          throw ParseError(line, "non-integer token '" + std::string(token) + "'");
        }
      }
      digits = token.substr(0, dot);
    }
  }
  Money value = 0;
  const char* first = digits.data();
  const char* last = digits.data() + digits.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError(line, "non-integer token '" + std::string(token) + "'");
  }
  return value;
}

Money parse_cost(std::string_view token, int line, bool allow_zero_fraction) {
  Money v = parse_integer(token, line, allow_zero_fraction);
  if (v < 0) {
    throw ParseError(line, "negative cost '" + std::string(token) + "'");
  }
  return v;
}

struct Header {
  int m;
  int n;
};

Header parse_header(const Line& line) {
  Money m = parse_integer(line.tokens[0], line.number, false);
  Money n = parse_integer(line.tokens[1], line.number, false);
  if (m < 2) throw ParseError(line.number, "m must be >= 2");
  if (n < 1) throw ParseError(line.number, "n must be >= 1");
  if (m > 1'000'000 || n > 1'000'000) {
    throw ParseError(line.number, "instance dimensions too large");
  }
  return {static_cast<int>(m), static_cast<int>(n)};
}

Instance build(std::vector<Money> fixed, std::vector<std::vector<Money>> costs) {
  try {
    return Instance(std::move(fixed), std::move(costs));
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

Instance parse_canonical(const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError(0, "empty input");
  const Line& head = lines.front();
  if (head.tokens.size() != 2) {
    throw ParseError(head.number, "malformed header: expected 'm n'");
  }
  const auto [m, n] = parse_header(head);
  if (lines.size() - 1 != static_cast<std::size_t>(m)) {
    const int at = lines.size() > static_cast<std::size_t>(m) + 1
                       ? lines[m + 1].number
                       : lines.back().number;
    throw ParseError(at, "expected " + std::to_string(m) + " site rows, found " +
                             std::to_string(lines.size() - 1));
  }
  std::vector<Money> fixed(m);
  std::vector<std::vector<Money>> costs(m, std::vector<Money>(n));
  for (int i = 0; i < m; ++i) {
    const Line& row = lines[i + 1];
    if (row.tokens.size() != static_cast<std::size_t>(n) + 1) {
      throw ParseError(row.number,
                       "row length mismatch: expected " + std::to_string(n + 1) +
                           " values, found " + std::to_string(row.tokens.size()));
    }
    fixed[i] = parse_cost(row.tokens[0], row.number, false);
    for (int j = 0; j < n; ++j) {
      costs[i][j] = parse_cost(row.tokens[j + 1], row.number, false);
    }
  }
  return build(std::move(fixed), std::move(costs));
}

Instance parse_uflib(const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError(0, "empty input");
  std::size_t at = 0;
  std::string name;
  if (lines[0].tokens[0].rfind("FILE:", 0) == 0) {
    if (lines[0].tokens.size() > 1) name = std::string(lines[0].tokens[1]);
    ++at;
  }
  if (at >= lines.size()) throw ParseError(0, "missing 'm n 0' header");
  const Line& head = lines[at];
  if (head.tokens.size() != 3) {
    throw ParseError(head.number, "malformed header: expected 'm n 0'");
  }
  const auto [m, n] = parse_header(head);
  // Rows may wrap across physical lines; read a flat token stream.
  auto tokens = flatten(lines, at + 1);
  const std::size_t per_row = static_cast<std::size_t>(n) + 2;
  if (tokens.size() != per_row * m) {
    throw ParseError(tokens.empty() ? head.number : tokens.back().line,
                     "expected " + std::to_string(per_row * m) +
                         " values after header, found " +
                         std::to_string(tokens.size()));
  }
  std::vector<Money> fixed(m);
  std::vector<std::vector<Money>> costs(m, std::vector<Money>(n));
  for (int i = 0; i < m; ++i) {
    const Token* row = &tokens[i * per_row];
    Money index = parse_integer(row[0].text, row[0].line, false);
    if (index != i + 1) {
      throw ParseError(row[0].line, "expected site index " + std::to_string(i + 1));
    }
    fixed[i] = parse_cost(row[1].text, row[1].line, true);
    for (int j = 0; j < n; ++j) {
      costs[i][j] = parse_cost(row[j + 2].text, row[j + 2].line, true);
    }
  }
  Instance inst = build(std::move(fixed), std::move(costs));
  inst.set_name(name);
  return inst;
}

Instance parse_orlib(const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError(0, "empty input");
  const Line& head = lines.front();
  if (head.tokens.size() != 2) {
    throw ParseError(head.number, "malformed header: expected 'm n'");
  }
  const auto [m, n] = parse_header(head);
  auto tokens = flatten(lines, 1);
  const std::size_t expected =
      2 * static_cast<std::size_t>(m) + static_cast<std::size_t>(n) * (m + 1);
  if (tokens.size() != expected) {
    throw ParseError(tokens.empty() ? head.number : tokens.back().line,
                     "expected " + std::to_string(expected) +
                         " values after header, found " +
                         std::to_string(tokens.size()));
  }
  std::vector<Money> fixed(m);
  std::vector<std::vector<Money>> costs(m, std::vector<Money>(n));
  std::size_t k = 0;
  for (int i = 0; i < m; ++i) {
    ++k;  // capacity, possibly the literal "capacity"
    fixed[i] = parse_cost(tokens[k].text, tokens[k].line, true);
    ++k;
  }
  for (int j = 0; j < n; ++j) {
    ++k;  // demand
    for (int i = 0; i < m; ++i, ++k) {
      costs[i][j] = parse_cost(tokens[k].text, tokens[k].line, true);
    }
  }
  return build(std::move(fixed), std::move(costs));
}

std::string describe(const ParseError& e) {
  if (e.line() > 0) return "line " + std::to_string(e.line()) + ": " + e.what();
  return e.what();
}

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error(message), line_(line) {}

const char* to_string(InstanceFormat format) {
  switch (format) {
    case InstanceFormat::kCanonical:
      return "canonical";
    case InstanceFormat::kUflLib:
      return "uflib";
    case InstanceFormat::kOrLib:
      return "orlib";
  }
  return "?";
}

Instance parse_instance(std::string_view text) {
  return parse_canonical(split_lines(text));
}

Instance parse_instance_any(std::string_view text, InstanceFormat* detected) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(0, "empty input");
  const auto& head = lines.front().tokens;

  std::vector<InstanceFormat> order;
  if (head[0].rfind("FILE:", 0) == 0 || head.size() == 3) {
    order = {InstanceFormat::kUflLib};
  } else if (head.size() == 2) {
    order = {InstanceFormat::kCanonical, InstanceFormat::kOrLib};
  } else {
    order = {InstanceFormat::kCanonical, InstanceFormat::kUflLib,
             InstanceFormat::kOrLib};
  }

  std::vector<std::pair<InstanceFormat, ParseError>> failures;
  for (auto format : order) {
    try {
      Instance inst = format == InstanceFormat::kCanonical ? parse_canonical(lines)
                      : format == InstanceFormat::kUflLib  ? parse_uflib(lines)
                                                           : parse_orlib(lines);
      if (detected) *detected = format;
      return inst;
    } catch (const ParseError& e) {
      failures.emplace_back(format, e);
    }
  }
  if (failures.size() == 1) throw failures.front().second;
  std::string message = failures.front().second.what();
  message += " (attempted formats:";
  for (const auto& [format, error] : failures) {
    message += std::string(" ") + to_string(format) + " [" + describe(error) + "]";
  }
  message += ")";
  throw ParseError(failures.front().second.line(), message);
}

std::string write_instance(const Instance& inst) {
  std::string out;
  out.reserve(static_cast<std::size_t>(inst.num_sites()) *
              (inst.num_clients() + 1) * 6);
  out += std::to_string(inst.num_sites());
  out += ' ';
  out += std::to_string(inst.num_clients());
  out += '\n';
  for (SiteIndex i = 0; i < inst.num_sites(); ++i) {
    out += std::to_string(inst.fixed_cost(i));
    for (ClientIndex j = 0; j < inst.num_clients(); ++j) {
      out += ' ';
      out += std::to_string(inst.cost(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Instance read_instance_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  Instance inst;
  try {
    inst = parse_instance_any(text);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + describe(e));
  }
  inst.set_name(path.stem().string());
  return inst;
}

void write_instance_file(const std::filesystem::path& path,
                         const Instance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_instance(inst);
}

}  // namespace splp
