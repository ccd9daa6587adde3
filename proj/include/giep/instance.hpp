#pragma once

#include <cstddef>
#include <random>

#include "giep/graph.hpp"
#include "giep/model.hpp"

namespace giep {

struct InstanceOptions {
  std::size_t n = 4;
  std::size_t k = 1;
  double edge_prob = 0.3;
  bool directed = false;
  double box = 5.0;      // values drawn from [-box, box] (imaginary parts from [min_gap, box])
  double min_gap = 0.5;  // rejection threshold between any two values
};

/// k conjugate pairs and l reals, pairwise at least min_gap apart.
Spectrum random_spectrum(std::size_t k, std::size_t l, std::mt19937_64& rng,
                         double box = 5.0, double min_gap = 0.5);

/// A graph on n vertices with k planted disjoint bidirected edges on random
/// vertices, plus every other edge independently with probability edge_prob
/// (per ordered pair when directed, per unordered pair otherwise).
Graph random_planted_graph(const InstanceOptions& opt, std::mt19937_64& rng);

struct Instance {
  Spectrum spectrum;
  Graph graph;
};

/// Throws InvalidArgument when 2k > n or n == 0.
Instance random_instance(const InstanceOptions& opt, std::mt19937_64& rng);

}  // namespace giep
