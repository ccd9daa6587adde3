#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "giep/graph.hpp"

namespace giep::testing {

/// Exhaustive maximum matching: enumerates every set of vertex-disjoint
/// bidirected edges. Exponential; fine for n <= 10.
inline std::size_t brute_force_matching_size(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, std::size_t v) -> std::size_t {
    while (v < n && used[v]) ++v;
    if (v >= n) return 0;
    used[v] = 1;
    std::size_t best = self(self, v + 1);  // v stays unmatched
    for (std::size_t w = v + 1; w < n; ++w) {
      if (used[w] || !g.has_bidirected(v, w)) continue;
      used[w] = 1;
      best = std::max(best, 1 + self(self, v + 1));
      used[w] = 0;
    }
    used[v] = 0;
    return best;
  };
  return rec(rec, 0);
}

inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double p, bool directed) {
  std::bernoulli_distribution coin(p);
  Graph g(n, directed);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = directed ? 0 : a + 1; b < n; ++b)
      if (a != b && coin(rng)) g.add_edge(a, b);
  return g;
}

inline Graph petersen() {
  Graph g(10, false);
  for (std::size_t i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);          // outer cycle
    g.add_edge(i, i + 5);                // spokes
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return g;
}

}  // namespace giep::testing
