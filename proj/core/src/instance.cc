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

#include "splp/instance.h"

#include <cctype>
#include <stdexcept>
#include <string>

#include "splp/random.h"

namespace splp {

Instance::Instance(std::vector<Money> fixed_costs,
                   std::vector<std::vector<Money>> transport_costs,
                   std::string name)
    : fixed_(std::move(fixed_costs)), name_(std::move(name)) {
  const std::size_t m = fixed_.size();
  if (m < 2) throw std::invalid_argument("m must be >= 2");
  if (transport_costs.size() != m) {
    throw std::invalid_argument("transportation matrix must have m rows");
  }
  const std::size_t n = transport_costs.front().size();
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  num_sites_ = static_cast<int>(m);
  num_clients_ = static_cast<int>(n);
  by_client_.resize(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    if (fixed_[i] < 0) {
      throw std::invalid_argument("negative fixed cost at site " +
                                  std::to_string(i + 1));
    }
    const auto& row = transport_costs[i];
    if (row.size() != n) {
      throw std::invalid_argument("row " + std::to_string(i + 1) + " has " +
                                  std::to_string(row.size()) +
                                  " costs, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] < 0) {
        throw std::invalid_argument("negative transportation cost at (" +
                                    std::to_string(i + 1) + ", " +
                                    std::to_string(j + 1) + ")");
      }
      by_client_[j * m + i] = row[j];
    }
  }
}

std::vector<Money> Instance::site_row(SiteIndex i) const {
  std::vector<Money> row(num_clients_);
  for (ClientIndex j = 0; j < num_clients_; ++j) row[j] = cost(i, j);
  return row;
}

CostRange fixed_cost_range(KgClass cls) {
  switch (cls) {
    case KgClass::kA:
      return {100, 200};
    case KgClass::kB:
      return {1000, 2000};
    case KgClass::kC:
      return {10000, 20000};
  }
  throw std::logic_error("unknown KG class");
}

const char* to_string(KgClass cls) {
  switch (cls) {
    case KgClass::kA:
      return "a";
    case KgClass::kB:
      return "b";
    case KgClass::kC:
      return "c";
  }
  return "?";
}

KgClass parse_kg_class(std::string_view text) {
  if (text.size() == 1) {
    switch (std::tolower(static_cast<unsigned char>(text[0]))) {
      case 'a':
        return KgClass::kA;
      case 'b':
        return KgClass::kB;
      case 'c':
        return KgClass::kC;
    }
  }
  throw std::invalid_argument("unknown KG class '" + std::string(text) +
                              "' (expected a, b or c)");
}

Instance generate_kg_instance(KgClass cls, int m, int n, bool symmetric,
                              std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("m must be >= 2");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (symmetric && m != n) {
    throw std::invalid_argument("symmetric instances require m == n");
  }
  Rng rng(seed);
  const CostRange fixed_range = fixed_cost_range(cls);
  std::vector<Money> fixed(m);
  for (auto& f : fixed) f = rng.between(fixed_range.lo, fixed_range.hi);

  std::vector<std::vector<Money>> costs(m, std::vector<Money>(n));
  const auto [lo, hi] = kKgTransportRange;
  if (symmetric) {
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < n; ++j) {
        costs[i][j] = rng.between(lo, hi);
        costs[j][i] = costs[i][j];
      }
    }
  } else {
    for (auto& row : costs) {
      for (auto& c : row) c = rng.between(lo, hi);
    }
  }
  std::string name = std::string(symmetric ? "gs" : "ga") +
                     std::to_string(m) + to_string(cls) + "-s" +
                     std::to_string(seed);
  return Instance(std::move(fixed), std::move(costs), std::move(name));
}

}  // namespace splp
