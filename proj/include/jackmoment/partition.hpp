// Copyright 2026 The jackmoment Authors
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

#ifndef JACKMOMENT_PARTITION_HPP
#define JACKMOMENT_PARTITION_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "jackmoment/errors.hpp"

namespace jackmoment {

/// Integer partition kappa_1 >= kappa_2 >= ... >= kappa_l > 0.
///
/// The empty partition has weight 0 and length 0. Rows and columns of the
/// Young diagram are 1-based in the public accessors (matrix convention).
class Partition {
public:
  Partition() = default;

  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  /// Trailing zeros are dropped; any other violation throws.
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw InvalidArgument("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw InvalidArgument("partition parts must be weakly decreasing");
    }
    weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
  }

  int weight() const noexcept { return weight_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  bool empty() const noexcept { return parts_.empty(); }

  /// 1-based row length; zero beyond the last row.
  int row(int i) const noexcept {
    return (i >= 1 && i <= length()) ? parts_[static_cast<std::size_t>(i - 1)] : 0;
  }

  std::span<const int> parts() const noexcept { return parts_; }

  bool contains(int i, int j) const noexcept { return i >= 1 && j >= 1 && j <= row(i); }

  /// Transposed diagram.
  Partition conjugate() const {
    std::vector<int> c(parts_.empty() ? 0 : static_cast<std::size_t>(parts_.front()), 0);
    for (int p : parts_)
      for (int j = 0; j < p; ++j) ++c[static_cast<std::size_t>(j)];
    return Partition(std::move(c));
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& l, const Partition& r) { return l.parts_ <=> r.parts_; }

  friend std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.to_string(); }

private:
  std::vector<int> parts_;
  int weight_ = 0;
};

/// Arm length of node (i, j): nodes of row i strictly right of column j.
inline int arm(const Partition& k, int i, int j) {
  if (!k.contains(i, j)) throw InvalidArgument("arm: (i,j) is not a node of " + k.to_string());
  return k.row(i) - j;
}

/// Leg length of node (i, j): nodes of column j strictly below row i.
inline int leg(const Partition& k, int i, int j) {
  if (!k.contains(i, j)) throw InvalidArgument("leg: (i,j) is not a node of " + k.to_string());
  int l = 0;
  for (int r = i + 1; r <= k.length() && k.row(r) >= j; ++r) ++l;
  return l;
}

/// True when every partial sum of mu is bounded by the corresponding partial
/// sum of kappa. Both partitions must have equal weight.
inline bool dominance_leq(const Partition& mu, const Partition& kappa) {
  if (mu.weight() != kappa.weight())
    throw InvalidArgument("dominance_leq: partitions of unequal weight");
  const int len = std::max(mu.length(), kappa.length());
  int sm = 0, sk = 0;
  for (int p = 1; p <= len; ++p) {
    sm += mu.row(p);
    sk += kappa.row(p);
    if (sm > sk) return false;
  }
  return true;
}

namespace detail {

// caps[r] is the prefix-minimum bound on row r+1 (int max when unbounded).
template <class F>
void enumerate_rec(std::vector<int>& parts, int remaining, int max_part,
                   const std::vector<int>& caps, F& f) {
  if (remaining == 0) {
    f(Partition(parts));
    return;
  }
  const auto depth = parts.size();
  if (depth >= caps.size()) return;
  const int cap = std::min({max_part, remaining, caps[depth]});
  for (int p = cap; p >= 1; --p) {
    // Largest weight the rows below can still hold when this row is p.
    long long room = p;
    for (std::size_t r = depth + 1; r < caps.size() && room < remaining; ++r)
      room += std::min(p, caps[r]);
    if (room < remaining) break;
    parts.push_back(p);
    enumerate_rec(parts, remaining - p, p, caps, f);
    parts.pop_back();
  }
}

inline std::vector<int> effective_caps(int max_parts, std::span<const int> row_caps) {
  std::vector<int> caps(static_cast<std::size_t>(max_parts), std::numeric_limits<int>::max());
  int cap = std::numeric_limits<int>::max();
  for (std::size_t r = 0; r < caps.size(); ++r) {
    if (r < row_caps.size()) cap = std::min(cap, std::max(0, row_caps[r]));
    caps[r] = cap;
  }
  return caps;
}

} // namespace detail

/// Visits every partition of `weight` with at most `max_parts` rows in
/// reverse-lexicographic order. `row_caps[i]` (0-based) bounds row i+1; rows
/// past the end of `row_caps` inherit the last bound.
template <class F>
void for_each_partition(int weight, int max_parts, std::span<const int> row_caps, F&& f) {
  if (weight < 0) throw InvalidArgument("partition weight must be non-negative");
  if (max_parts < 1) throw InvalidArgument("max_parts must be positive");
  const auto caps = detail::effective_caps(max_parts, row_caps);
  std::vector<int> parts;
  parts.reserve(static_cast<std::size_t>(std::min(weight, max_parts)));
  detail::enumerate_rec(parts, weight, weight, caps, f);
}

template <class F>
void for_each_partition(int weight, int max_parts, F&& f) {
  for_each_partition(weight, max_parts, std::span<const int>{}, std::forward<F>(f));
}

inline std::vector<Partition> enumerate_partitions(int weight, int max_parts) {
  std::vector<Partition> out;
  for_each_partition(weight, max_parts, [&](const Partition& p) { out.push_back(p); });
  return out;
}

/// Largest weight reachable under `row_caps` with at most `max_parts` rows,
/// or int max when unbounded.
inline int max_capped_weight(int max_parts, std::span<const int> row_caps) {
  long long total = 0;
  for (int cap : detail::effective_caps(max_parts, row_caps)) {
    if (cap == std::numeric_limits<int>::max()) return cap;
    total += cap;
  }
  return total > std::numeric_limits<int>::max() ? std::numeric_limits<int>::max()
                                                 : static_cast<int>(total);
}

} // namespace jackmoment

#endif // JACKMOMENT_PARTITION_HPP
