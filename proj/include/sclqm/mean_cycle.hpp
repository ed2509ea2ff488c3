#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "sclqm/rational.hpp"

namespace sclqm {

struct WeightedEdge {
  std::size_t from;
  std::size_t to;
  std::int64_t weight;
};

// Karp's maximum mean cycle over integer edge weights, returned exactly.
//
// D[k][v] is the best weight of a walk with exactly k edges ending at v,
// starting anywhere (D[0][v] = 0 for every v, which plays the role of a
// zero-weight super source). The answer is
//
//   max_v min_{0 <= k < n} (D[n][v] - D[k][v]) / (n - k)
//
// taken over v with D[n][v] finite. Returns nullopt for an acyclic graph.
// O(n * |E|) time, O(n^2) memory.
inline std::optional<Rational> max_mean_cycle(std::size_t node_count,
                                              std::span<const WeightedEdge> edges) {
  constexpr std::int64_t unreachable = std::numeric_limits<std::int64_t>::min();
  const std::size_t n = node_count;
  if (n == 0) return std::nullopt;

  std::vector<std::int64_t> table((n + 1) * n, unreachable);
  auto at = [&](std::size_t k, std::size_t v) -> std::int64_t& { return table[k * n + v]; };
  for (std::size_t v = 0; v < n; ++v) at(0, v) = 0;

  for (std::size_t k = 1; k <= n; ++k) {
    for (const auto& e : edges) {
      const std::int64_t prev = at(k - 1, e.from);
      if (prev == unreachable) continue;
      std::int64_t& cell = at(k, e.to);
      if (prev + e.weight > cell) cell = prev + e.weight;
    }
  }

  std::optional<Rational> best;
  for (std::size_t v = 0; v < n; ++v) {
    const std::int64_t full = at(n, v);
    if (full == unreachable) continue;
    std::optional<Rational> worst;
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t partial = at(k, v);
      if (partial == unreachable) continue;
      Rational ratio(full - partial, static_cast<std::int64_t>(n - k));
      if (!worst || ratio < *worst) worst = ratio;
    }
    if (worst && (!best || *worst > *best)) best = worst;
  }
  return best;
}

}  // namespace sclqm
