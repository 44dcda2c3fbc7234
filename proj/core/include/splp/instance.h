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

#ifndef SPLP_INSTANCE_H_
#define SPLP_INSTANCE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace splp {

// Integer money. Objective values of instances up to 10,000 x 10,000 with
// costs <= 20,000 stay below 2e12, far from the int64 limit.
using Money = std::int64_t;

// Zero-based site / client indices. File formats and user-facing output are
// one-based; conversion happens at the I/O boundary.
using SiteIndex = std::int32_t;
using ClientIndex = std::int32_t;

// A Simple Plant Location instance: m candidate sites with opening costs and
// an m x n matrix of transportation costs. Immutable after construction.
class Instance {
 public:
  Instance() = default;

  // Throws std::invalid_argument if m < 2, n < 1, a cost is negative or the
  // matrix has the wrong shape.
  Instance(std::vector<Money> fixed_costs,
           std::vector<std::vector<Money>> transport_costs,
           std::string name = {});

  int num_sites() const { return num_sites_; }
  int num_clients() const { return num_clients_; }
  const std::string& name() const { return name_; }

  Money fixed_cost(SiteIndex i) const { return fixed_[i]; }
  Money cost(SiteIndex i, ClientIndex j) const {
    return by_client_[static_cast<std::size_t>(j) * num_sites_ + i];
  }

  std::span<const Money> fixed_costs() const { return fixed_; }
  // Costs of serving client j from every site, indexed by site.
  std::span<const Money> client_costs(ClientIndex j) const {
    return {by_client_.data() + static_cast<std::size_t>(j) * num_sites_,
            static_cast<std::size_t>(num_sites_)};
  }

  // Row i of the transportation matrix, copied out (site-major order).
  std::vector<Money> site_row(SiteIndex i) const;

  void set_name(std::string name) { name_ = std::move(name); }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.num_sites_ == b.num_sites_ && a.num_clients_ == b.num_clients_ &&
           a.fixed_ == b.fixed_ && a.by_client_ == b.by_client_;
  }

 private:
  int num_sites_ = 0;
  int num_clients_ = 0;
  std::vector<Money> fixed_;
  // Client-major storage: by_client_[j * m + i] = c_ij.
  std::vector<Money> by_client_;
  std::string name_;
};

// Koerkel-Ghosh fixed-cost classes.
enum class KgClass { kA, kB, kC };

struct CostRange {
  Money lo;
  Money hi;
};

CostRange fixed_cost_range(KgClass cls);
inline constexpr CostRange kKgTransportRange{1000, 2000};

const char* to_string(KgClass cls);
// Accepts "a"/"b"/"c" in either case. Throws std::invalid_argument otherwise.
KgClass parse_kg_class(std::string_view text);

// Draws a KG-style random instance. All values are sampled uniformly and
// inclusively from their ranges. A symmetric instance requires m == n; the
// upper triangle (diagonal included) is drawn and mirrored.
Instance generate_kg_instance(KgClass cls, int m, int n, bool symmetric,
                              std::uint64_t seed);

}  // namespace splp

#endif  // SPLP_INSTANCE_H_
