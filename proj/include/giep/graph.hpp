#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "giep/linalg.hpp"

namespace giep {

/// Loopless graph on vertices 0..n-1. Undirected graphs are stored
/// bidirected: every {a, b} appears as both (a, b) and (b, a).
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  Graph(std::size_t n, bool directed);
  /// Throws BadFormat on loops, out-of-range endpoints or duplicates.
  Graph(std::size_t n, bool directed, const std::vector<Edge>& edges);

  std::size_t vertex_count() const noexcept { return n_; }
  bool directed() const noexcept { return directed_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }

  bool has_edge(std::size_t a, std::size_t b) const { return edges_.contains({a, b}); }
  bool has_bidirected(std::size_t a, std::size_t b) const {
    return has_edge(a, b) && has_edge(b, a);
  }

  /// Adds (a, b), plus (b, a) when undirected. Throws BadFormat on loops,
  /// out-of-range endpoints or an edge already present.
  void add_edge(std::size_t a, std::size_t b);

  /// Path 0-1-...-(n-1), undirected.
  static Graph path(std::size_t n);

  /// The graph of a matrix: i -> j iff m(i, j) != 0 for i != j. Reported as
  /// undirected when the pattern is symmetric.
  static Graph of_matrix(const DenseMatrix& m);

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_;
  bool directed_;
  std::set<Edge> edges_;
};

/// Edge-list text: header "n m directed|undirected", then m lines "a b"
/// with 1-based vertices. LF or CRLF line endings.
Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

/// Vertex-disjoint bidirected edges, each stored as (smaller, larger).
struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t size() const noexcept { return pairs.size(); }
};

/// Maximum-cardinality matching over the bidirected edges of g (Edmonds'
/// blossom algorithm). Pairs are sorted by their smaller vertex.
Matching max_matching(const Graph& g);

/// True when the pairs are disjoint, in range and bidirected in g.
bool is_valid_matching(const Graph& g, const Matching& m);

/// A bijection of vertex labels; forward maps old -> new.
class Relabeling {
 public:
  explicit Relabeling(std::vector<std::size_t> forward);
  static Relabeling identity(std::size_t n);

  std::size_t size() const noexcept { return forward_.size(); }
  std::size_t to_new(std::size_t old_label) const { return forward_.at(old_label); }
  std::size_t to_old(std::size_t new_label) const { return inverse_.at(new_label); }
  const std::vector<std::size_t>& forward() const noexcept { return forward_; }
  const std::vector<std::size_t>& inverse() const noexcept { return inverse_; }

  Graph apply(const Graph& g) const;
  /// B(p(i), p(j)) = m(i, j).
  DenseMatrix apply(const DenseMatrix& m) const;
  /// Inverse of apply(const DenseMatrix&).
  DenseMatrix revert(const DenseMatrix& m) const;

 private:
  std::vector<std::size_t> forward_;
  std::vector<std::size_t> inverse_;
};

/// A parameter slot off the matched blocks: u lives at (row, col) and, when
/// bidirected, omega lives at (col, row).
struct Slot {
  std::size_t row;
  std::size_t col;
  bool bidirected;
  friend bool operator==(const Slot&, const Slot&) = default;
};

struct RelabelPlan {
  Relabeling relabeling;
  std::size_t k;
  std::vector<Slot> slots;  // in new labels
};

/// Moves the first k matched pairs (ordered by smaller vertex) onto
/// (0,1), (2,3), ..., (2k-2, 2k-1), smaller old label first; remaining
/// vertices follow in ascending old label. Every other edge becomes a slot:
/// bidirected edges as (min, max), one-way edges in their own direction.
/// Slots are sorted by (min endpoint, max endpoint). Throws MatchingTooSmall
/// when the matching has fewer than k pairs.
RelabelPlan plan_relabeling(const Graph& g, const Matching& matching, std::size_t k);

}  // namespace giep
