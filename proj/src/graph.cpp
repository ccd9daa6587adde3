#include "giep/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <queue>
#include <sstream>

#include "giep/error.hpp"

namespace giep {

Graph::Graph(std::size_t n, bool directed) : n_(n), directed_(directed) {}

Graph::Graph(std::size_t n, bool directed, const std::vector<Edge>& edges)
    : Graph(n, directed) {
  for (const auto& [a, b] : edges) add_edge(a, b);
}

void Graph::add_edge(std::size_t a, std::size_t b) {
  if (a >= n_ || b >= n_) {
    throw Error(ErrorKind::BadFormat, "edge (" + std::to_string(a + 1) + "," +
                                          std::to_string(b + 1) +
                                          ") has a vertex out of range");
  }
  if (a == b) {
    throw Error(ErrorKind::BadFormat,
                "loop at vertex " + std::to_string(a + 1) + " (graphs must be loopless)");
  }
  if (edges_.contains({a, b}) || (!directed_ && edges_.contains({b, a}))) {
    throw Error(ErrorKind::BadFormat, "duplicate edge (" + std::to_string(a + 1) +
                                          "," + std::to_string(b + 1) + ")");
  }
  edges_.insert({a, b});
  if (!directed_) edges_.insert({b, a});
}

Graph Graph::path(std::size_t n) {
  Graph g(n, false);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph Graph::of_matrix(const DenseMatrix& m) {
  if (!m.square()) throw Error(ErrorKind::DimensionMismatch, "matrix must be square");
  const std::size_t n = m.rows();
  bool symmetric = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && ((m(i, j) != 0.0) != (m(j, i) != 0.0))) symmetric = false;
  Graph g(n, !symmetric);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && m(i, j) != 0.0) g.edges_.insert({i, j});
  return g;
}

// ---------------------------------------------------------------------------
// Edge-list format

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto pos = text.find('\n');
    std::string_view line = text.substr(0, pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string_view::npos)
    lines.pop_back();
  return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_count(std::string_view tok, std::size_t line_no) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(ErrorKind::BadFormat, "line " + std::to_string(line_no) +
                                          ": expected a non-negative integer, got '" +
                                          std::string(tok) + "'");
  }
  return value;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorKind::BadFormat, "empty graph file");
  const auto header = tokens(lines[0]);
  if (header.size() != 3) {
    throw Error(ErrorKind::BadFormat, "header must be 'n m directed|undirected'");
  }
  const std::size_t n = parse_count(header[0], 1);
  const std::size_t m = parse_count(header[1], 1);
  bool directed = false;
  if (header[2] == "directed") {
    directed = true;
  } else if (header[2] != "undirected") {
    throw Error(ErrorKind::BadFormat, "header orientation must be 'directed' or 'undirected'");
  }
  if (lines.size() != m + 1) {
    throw Error(ErrorKind::BadFormat, "header announces " + std::to_string(m) +
                                          " edges but file has " +
                                          std::to_string(lines.size() - 1));
  }
  Graph g(n, directed);
  for (std::size_t i = 1; i <= m; ++i) {
    const auto t = tokens(lines[i]);
    if (t.size() != 2) {
      throw Error(ErrorKind::BadFormat,
                  "line " + std::to_string(i + 1) + ": expected two vertex labels");
    }
    const std::size_t a = parse_count(t[0], i + 1);
    const std::size_t b = parse_count(t[1], i + 1);
    if (a == 0 || b == 0 || a > n || b > n) {
      throw Error(ErrorKind::BadFormat, "line " + std::to_string(i + 1) +
                                            ": vertex out of range 1.." + std::to_string(n));
    }
    g.add_edge(a - 1, b - 1);
  }
  return g;
}

std::string format_graph(const Graph& g) {
  std::vector<Graph::Edge> listed;
  for (const auto& [a, b] : g.edges())
    if (g.directed() || a < b) listed.emplace_back(a, b);
  std::ostringstream os;
  os << g.vertex_count() << ' ' << listed.size() << ' '
     << (g.directed() ? "directed" : "undirected") << '\n';
  for (const auto& [a, b] : listed) os << a + 1 << ' ' << b + 1 << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Edmonds' blossom algorithm

namespace {

class BlossomMatcher {
 public:
  explicit BlossomMatcher(std::vector<std::vector<int>> adj)
      : n_(static_cast<int>(adj.size())),
        adj_(std::move(adj)),
        match_(n_, -1),
        parent_(n_),
        base_(n_),
        used_(n_),
        blossom_(n_) {}

  std::vector<int> run() {
    for (int v = 0; v < n_; ++v) {
      if (match_[v] != -1) continue;
      int u = find_augmenting_path(v);
      while (u != -1) {
        const int pv = parent_[u];
        const int next = match_[pv];
        match_[u] = pv;
        match_[pv] = u;
        u = next;
      }
    }
    return match_;
  }

 private:
  int lowest_common_ancestor(int a, int b) {
    std::vector<char> seen(n_, 0);
    for (;;) {
      a = base_[a];
      seen[a] = 1;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      blossom_[base_[v]] = 1;
      blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int find_augmenting_path(int root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), -1);
    std::iota(base_.begin(), base_.end(), 0);
    used_[root] = 1;
    std::queue<int> queue;
    queue.push(root);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      for (const int to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          // Odd cycle: contract the blossom onto its base.
          const int cur = lowest_common_ancestor(v, to);
          std::fill(blossom_.begin(), blossom_.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n_; ++i) {
            if (blossom_[base_[i]]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = 1;
                queue.push(i);
              }
            }
          }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) return to;
          used_[match_[to]] = 1;
          queue.push(match_[to]);
        }
      }
    }
    return -1;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_;
  std::vector<int> parent_;
  std::vector<int> base_;
  std::vector<char> used_;
  std::vector<char> blossom_;
};

}  // namespace

Matching max_matching(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : g.edges())
    if (g.has_edge(b, a)) adj[a].push_back(static_cast<int>(b));
  for (auto& list : adj) std::sort(list.begin(), list.end());

  const std::vector<int> mate = BlossomMatcher(std::move(adj)).run();
  Matching m;
  for (std::size_t v = 0; v < n; ++v)
    if (mate[v] > static_cast<int>(v)) m.pairs.emplace_back(v, static_cast<std::size_t>(mate[v]));
  return m;
}

bool is_valid_matching(const Graph& g, const Matching& m) {
  std::vector<char> covered(g.vertex_count(), 0);
  for (const auto& [a, b] : m.pairs) {
    if (a >= g.vertex_count() || b >= g.vertex_count() || a == b) return false;
    if (covered[a] || covered[b]) return false;
    if (!g.has_bidirected(a, b)) return false;
    covered[a] = covered[b] = 1;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Relabeling

Relabeling::Relabeling(std::vector<std::size_t> forward)
    : forward_(std::move(forward)), inverse_(forward_.size(), forward_.size()) {
  for (std::size_t i = 0; i < forward_.size(); ++i) {
    const std::size_t t = forward_[i];
    if (t >= forward_.size() || inverse_[t] != forward_.size()) {
      throw Error(ErrorKind::InvalidArgument, "relabeling is not a permutation");
    }
    inverse_[t] = i;
  }
}

Relabeling Relabeling::identity(std::size_t n) {
  std::vector<std::size_t> f(n);
  std::iota(f.begin(), f.end(), std::size_t{0});
  return Relabeling(std::move(f));
}

Graph Relabeling::apply(const Graph& g) const {
  if (g.vertex_count() != size())
    throw Error(ErrorKind::DimensionMismatch, "relabeling size differs from graph");
  std::vector<Graph::Edge> edges;
  for (const auto& [a, b] : g.edges())
    if (g.directed() || a < b) edges.emplace_back(forward_[a], forward_[b]);
  return Graph(size(), g.directed(), edges);
}

DenseMatrix Relabeling::apply(const DenseMatrix& m) const {
  if (m.rows() != size() || m.cols() != size())
    throw Error(ErrorKind::DimensionMismatch, "relabeling size differs from matrix");
  DenseMatrix out(size(), size());
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) out(forward_[i], forward_[j]) = m(i, j);
  return out;
}

DenseMatrix Relabeling::revert(const DenseMatrix& m) const {
  if (m.rows() != size() || m.cols() != size())
    throw Error(ErrorKind::DimensionMismatch, "relabeling size differs from matrix");
  DenseMatrix out(size(), size());
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) out(inverse_[i], inverse_[j]) = m(i, j);
  return out;
}

RelabelPlan plan_relabeling(const Graph& g, const Matching& matching, std::size_t k) {
  if (matching.size() < k) {
    throw Error(ErrorKind::MatchingTooSmall,
                "graph needs a matching of size k = " + std::to_string(k) +
                    " but its maximum matching has size " + std::to_string(matching.size()));
  }
  if (!is_valid_matching(g, matching)) {
    throw Error(ErrorKind::InvalidArgument, "matching is not valid for this graph");
  }
  const std::size_t n = g.vertex_count();
  auto pairs = matching.pairs;
  for (auto& [a, b] : pairs)
    if (a > b) std::swap(a, b);
  std::sort(pairs.begin(), pairs.end());

  std::vector<std::size_t> forward(n, n);
  std::vector<char> placed(n, 0);
  for (std::size_t j = 0; j < k; ++j) {
    forward[pairs[j].first] = 2 * j;
    forward[pairs[j].second] = 2 * j + 1;
    placed[pairs[j].first] = placed[pairs[j].second] = 1;
  }
  std::size_t next = 2 * k;
  for (std::size_t v = 0; v < n; ++v)
    if (!placed[v]) forward[v] = next++;

  RelabelPlan plan{Relabeling(std::move(forward)), k, {}};
  const Graph h = plan.relabeling.apply(g);
  auto in_block = [k](std::size_t a, std::size_t b) {
    return a / 2 == b / 2 && a < 2 * k && b < 2 * k;
  };
  for (const auto& [a, b] : h.edges()) {
    if (in_block(a, b)) continue;
    if (h.has_edge(b, a)) {
      if (a < b) plan.slots.push_back({a, b, true});
    } else {
      plan.slots.push_back({a, b, false});
    }
  }
  std::sort(plan.slots.begin(), plan.slots.end(), [](const Slot& x, const Slot& y) {
    const auto kx = std::make_pair(std::min(x.row, x.col), std::max(x.row, x.col));
    const auto ky = std::make_pair(std::min(y.row, y.col), std::max(y.row, y.col));
    return kx < ky;
  });
  return plan;
}

}  // namespace giep
