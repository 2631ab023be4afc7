#pragma once

// Finite simplicial graphs, cliques, clique complexes and chordality.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "topraag/error.hpp"

namespace topraag {

using Clique = std::vector<std::size_t>;  // sorted vertex indices

// Vertices are indexed in input order; that order breaks every tie downstream.
class Graph {
 public:
  Graph() = default;

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t v) const { return labels_.at(v); }

  std::optional<std::size_t> index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool adjacent(std::size_t a, std::size_t b) const { return adj_[a][b]; }
  const std::vector<std::size_t>& neighbours(std::size_t v) const { return nbrs_[v]; }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = a + 1; b < size(); ++b)
        if (adj_[a][b]) out.emplace_back(a, b);
    return out;
  }

  std::size_t edge_count() const { return edges().size(); }

  bool operator==(const Graph& o) const { return labels_ == o.labels_ && adj_ == o.adj_; }

  Graph induced(const std::vector<std::size_t>& keep) const {
    Graph g;
    for (auto v : keep) g.add_vertex(labels_[v]);
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = i + 1; j < keep.size(); ++j)
        if (adj_[keep[i]][keep[j]]) g.add_edge(i, j);
    return g;
  }

  friend Graph validate_graph(const std::vector<std::string>&,
                              const std::vector<std::pair<std::string, std::string>>&);

 private:
  void add_vertex(const std::string& l) {
    index_.emplace(l, labels_.size());
    labels_.push_back(l);
    for (auto& row : adj_) row.push_back(false);
    adj_.emplace_back(labels_.size(), false);
    nbrs_.emplace_back();
  }
  void add_edge(std::size_t a, std::size_t b) {
    if (adj_[a][b]) return;
    adj_[a][b] = adj_[b][a] = true;
    nbrs_[a].insert(std::lower_bound(nbrs_[a].begin(), nbrs_[a].end(), b), b);
    nbrs_[b].insert(std::lower_bound(nbrs_[b].begin(), nbrs_[b].end(), a), a);
  }

  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<bool>> adj_;
  std::vector<std::vector<std::size_t>> nbrs_;
};

// Duplicate edges are merged; the vertex order of the input is kept.
inline Graph validate_graph(const std::vector<std::string>& vertices,
                            const std::vector<std::pair<std::string, std::string>>& edges) {
  Graph g;
  for (const auto& v : vertices) {
    if (g.index_of(v)) raise(ErrorCode::DuplicateVertex, v);
    g.add_vertex(v);
  }
  for (const auto& [a, b] : edges) {
    auto ia = g.index_of(a), ib = g.index_of(b);
    if (!ia) raise(ErrorCode::UnknownEndpoint, a);
    if (!ib) raise(ErrorCode::UnknownEndpoint, b);
    if (*ia == *ib) raise(ErrorCode::SelfLoop, a);
    g.add_edge(*ia, *ib);
  }
  return g;
}

namespace graphs {

inline Graph edgeless(std::size_t n, const std::string& prefix = "v") {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
  return validate_graph(v, {});
}

inline Graph complete(std::size_t n, const std::string& prefix = "v") {
  std::vector<std::string> v;
  std::vector<std::pair<std::string, std::string>> e;
  for (std::size_t i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(v[i], v[j]);
  return validate_graph(v, e);
}

inline Graph point() { return validate_graph({"s"}, {}); }
inline Graph edge() { return validate_graph({"s", "t"}, {{"s", "t"}}); }
inline Graph path3() { return validate_graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }
inline Graph triangle() {
  return validate_graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
}
inline Graph square() {
  return validate_graph({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
}

}  // namespace graphs

// All cliques including the empty one, ordered by size and then lexicographically.
inline std::vector<Clique> cliques(const Graph& g) {
  std::vector<Clique> out{{}};
  std::vector<Clique> frontier{{}};
  while (!frontier.empty()) {
    std::vector<Clique> next;
    for (const auto& c : frontier) {
      std::size_t start = c.empty() ? 0 : c.back() + 1;
      for (std::size_t v = start; v < g.size(); ++v) {
        bool ok = std::all_of(c.begin(), c.end(), [&](std::size_t w) { return g.adjacent(v, w); });
        if (!ok) continue;
        Clique d = c;
        d.push_back(v);
        next.push_back(std::move(d));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

inline std::size_t clique_number(const Graph& g) {
  std::size_t best = 0;
  for (const auto& c : cliques(g)) best = std::max(best, c.size());
  return best;
}

struct SimplicialComplex {
  std::set<std::vector<std::size_t>> simplices;  // non-empty, downward closed

  int dimension() const {
    int d = -1;
    for (const auto& s : simplices) d = std::max(d, static_cast<int>(s.size()) - 1);
    return d;
  }
  bool contains(const std::vector<std::size_t>& s) const { return simplices.count(s) > 0; }
};

inline SimplicialComplex clique_complex(const Graph& g) {
  SimplicialComplex k;
  for (auto& c : cliques(g))
    if (!c.empty()) k.simplices.insert(c);
  return k;
}

inline std::vector<std::vector<std::size_t>> component_indices(const Graph& g) {
  std::vector<int> comp(g.size(), -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (comp[s] >= 0) continue;
    out.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = static_cast<int>(out.size() - 1);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (auto w : g.neighbours(v))
        if (comp[w] < 0) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

inline std::vector<Graph> connected_components(const Graph& g) {
  std::vector<Graph> out;
  for (const auto& c : component_indices(g)) out.push_back(g.induced(c));
  return out;
}

inline bool is_connected(const Graph& g) { return component_indices(g).size() <= 1; }

inline Graph graph_join(const Graph& a, const Graph& b) {
  std::vector<std::string> v = a.labels();
  for (const auto& l : b.labels()) {
    if (a.index_of(l)) raise(ErrorCode::LabelClash, l);
    v.push_back(l);
  }
  std::vector<std::pair<std::string, std::string>> e;
  for (auto [x, y] : a.edges()) e.emplace_back(a.label(x), a.label(y));
  for (auto [x, y] : b.edges()) e.emplace_back(b.label(x), b.label(y));
  for (const auto& x : a.labels())
    for (const auto& y : b.labels()) e.emplace_back(x, y);
  return validate_graph(v, e);
}

struct ChordalityResult {
  bool chordal = true;
  std::vector<std::size_t> elimination_order;  // perfect elimination ordering when chordal
  std::vector<std::size_t> induced_cycle;      // length >= 4 when not chordal
};

namespace detail {

// Shortest u-w path avoiding `blocked`; empty if none.
inline std::vector<std::size_t> shortest_path(const Graph& g, std::size_t u, std::size_t w,
                                              const std::vector<bool>& blocked) {
  std::vector<long> prev(g.size(), -2);
  std::queue<std::size_t> q;
  q.push(u);
  prev[u] = -1;
  while (!q.empty()) {
    auto x = q.front();
    q.pop();
    if (x == w) break;
    for (auto y : g.neighbours(x))
      if (!blocked[y] && prev[y] == -2) {
        prev[y] = static_cast<long>(x);
        q.push(y);
      }
  }
  if (prev[w] == -2) return {};
  std::vector<std::size_t> path;
  for (long x = static_cast<long>(w); x != -1; x = prev[x]) path.push_back(static_cast<std::size_t>(x));
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

// Maximum cardinality search, then a perfect-elimination check. On failure an
// induced cycle is extracted: some vertex v has non-adjacent neighbours u, w
// joined by a path that avoids the rest of N[v]; a shortest such path closes a
// chordless cycle through v.
inline ChordalityResult is_chordal(const Graph& g) {
  const std::size_t n = g.size();
  ChordalityResult res;
  std::vector<int> weight(n, 0);
  std::vector<bool> numbered(n, false);
  std::vector<std::size_t> visit;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!numbered[v] && (best == n || weight[v] > weight[best])) best = v;
    numbered[best] = true;
    visit.push_back(best);
    for (auto w : g.neighbours(best))
      if (!numbered[w]) ++weight[w];
  }
  std::vector<std::size_t> order(visit.rbegin(), visit.rend());
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  bool ok = true;
  for (std::size_t i = 0; i < n && ok; ++i) {
    std::vector<std::size_t> later;
    for (auto w : g.neighbours(order[i]))
      if (pos[w] > i) later.push_back(w);
    for (std::size_t a = 0; a < later.size() && ok; ++a)
      for (std::size_t b = a + 1; b < later.size() && ok; ++b)
        if (!g.adjacent(later[a], later[b])) ok = false;
  }
  if (ok) {
    res.elimination_order = order;
    return res;
  }
  res.chordal = false;
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nb = g.neighbours(v);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        auto u = nb[a], w = nb[b];
        if (g.adjacent(u, w)) continue;
        std::vector<bool> blocked(n, false);
        blocked[v] = true;
        for (auto x : nb) blocked[x] = true;
        blocked[u] = blocked[w] = false;
        auto path = detail::shortest_path(g, u, w, blocked);
        if (path.empty()) continue;
        res.induced_cycle.push_back(v);
        res.induced_cycle.insert(res.induced_cycle.end(), path.begin(), path.end());
        return res;
      }
  }
  return res;
}

}  // namespace topraag
