#pragma once

// Cellular chain complexes of finite cube complexes and their integral
// homology.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "topraag/error.hpp"
#include "topraag/graph.hpp"
#include "topraag/smith.hpp"

namespace topraag {

// A finite cube complex. A d-cell lists its 2^d corners, corner of the
// affine map {0,1}^d -> cell at position mask; vertices are 0..n-1.
struct CellComplex {
  std::size_t vertex_count = 0;
  std::vector<std::vector<std::vector<std::size_t>>> cells;  // cells[d-1] for d >= 1

  std::size_t dimension() const {
    std::size_t d = 0;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (!cells[i].empty()) d = i + 1;
    return vertex_count == 0 ? 0 : d;
  }
  std::size_t count(std::size_t d) const {
    if (d == 0) return vertex_count;
    return d <= cells.size() ? cells[d - 1].size() : 0;
  }
  void add_cell(std::vector<std::size_t> corners) {
    std::size_t d = 0;
    while ((std::size_t{1} << d) < corners.size()) ++d;
    if ((std::size_t{1} << d) != corners.size() || d == 0)
      raise(ErrorCode::NonClosedComplex, "a cell needs 2^d corners with d >= 1");
    if (cells.size() < d) cells.resize(d);
    cells[d - 1].push_back(std::move(corners));
  }
  std::int64_t euler_characteristic() const {
    std::int64_t chi = static_cast<std::int64_t>(vertex_count);
    for (std::size_t d = 0; d < cells.size(); ++d)
      chi += (d % 2 == 0 ? -1 : 1) * static_cast<std::int64_t>(cells[d].size());
    return chi;
  }
};

namespace complexes {

inline CellComplex points(std::size_t n) { return {n, {}}; }

// Boundary of the unit square: four vertices, four edges.
inline CellComplex hollow_square() {
  CellComplex c{4, {}};
  for (auto e : std::vector<std::vector<std::size_t>>{{0, 1}, {1, 3}, {2, 3}, {0, 2}}) c.add_cell(e);
  return c;
}

// The standard n-cube with all of its faces.
inline CellComplex full_cube(std::size_t n) {
  CellComplex c{std::size_t{1} << n, {}};
  // A face fixes some coordinates; free coordinates in increasing order.
  for (std::size_t free = 1; free < (std::size_t{1} << n); ++free) {
    std::vector<std::size_t> axes;
    for (std::size_t b = 0; b < n; ++b)
      if (free & (std::size_t{1} << b)) axes.push_back(b);
    for (std::size_t fixed = 0; fixed < (std::size_t{1} << n); ++fixed) {
      if (fixed & free) continue;
      std::vector<std::size_t> corners;
      for (std::size_t m = 0; m < (std::size_t{1} << axes.size()); ++m) {
        std::size_t v = fixed;
        for (std::size_t k = 0; k < axes.size(); ++k)
          if (m & (std::size_t{1} << k)) v |= std::size_t{1} << axes[k];
        corners.push_back(v);
      }
      c.add_cell(corners);
    }
  }
  return c;
}

// The n-cube without its top cell.
inline CellComplex cube_boundary(std::size_t n) {
  auto c = full_cube(n);
  c.cells[n - 1].clear();
  return c;
}

}  // namespace complexes

struct ChainComplex {
  // boundary[d] maps d-cells to (d-1)-cells, rows indexed by (d-1)-cells;
  // boundary[0] is the zero map to nothing.
  std::vector<SparseMatrix> boundary;
  std::vector<std::size_t> counts;

  std::size_t top() const { return counts.empty() ? 0 : counts.size() - 1; }
};

namespace detail {

// Orientation sign of the affine identification between a face as seen from
// its parent cell (corners `seen`) and the stored cell (corners `stored`):
// sign of the axis permutation times (-1)^(number of reflected axes).
inline std::optional<int> relative_orientation(const std::vector<std::size_t>& seen,
                                               const std::vector<std::size_t>& stored) {
  const std::size_t n = seen.size();
  std::size_t d = 0;
  while ((std::size_t{1} << d) < n) ++d;
  std::map<std::size_t, std::size_t> where;
  for (std::size_t m = 0; m < n; ++m) where[seen[m]] = m;
  auto at = [&](std::size_t v) -> std::optional<std::size_t> {
    auto it = where.find(v);
    if (it == where.end()) return std::nullopt;
    return it->second;
  };
  auto c = at(stored[0]);
  if (!c) return std::nullopt;
  std::vector<std::size_t> perm(d);
  for (std::size_t j = 0; j < d; ++j) {
    auto x = at(stored[std::size_t{1} << j]);
    if (!x) return std::nullopt;
    std::size_t diff = *x ^ *c;
    if (__builtin_popcountll(diff) != 1) return std::nullopt;
    perm[j] = static_cast<std::size_t>(__builtin_ctzll(diff));
  }
  // The map must be affine on every corner.
  for (std::size_t m = 0; m < n; ++m) {
    std::size_t img = *c;
    for (std::size_t j = 0; j < d; ++j)
      if (m & (std::size_t{1} << j)) img ^= std::size_t{1} << perm[j];
    if (seen[img] != stored[m]) return std::nullopt;
  }
  int sign = (__builtin_popcountll(*c) % 2 == 0) ? 1 : -1;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (perm[i] > perm[j]) sign = -sign;
  return sign;
}

}  // namespace detail

// Cubical boundary: d(Q) = sum_i (-1)^i (F_i^1 - F_i^0). Throws
// NonClosedComplex when a face is missing or a cell is not a cube, and
// verifies that consecutive boundaries compose to zero.
inline ChainComplex chain_complex(const CellComplex& cc) {
  ChainComplex ch;
  const std::size_t top = cc.dimension();
  ch.counts.push_back(cc.vertex_count);
  ch.boundary.push_back(SparseMatrix(0, cc.vertex_count));
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(top + 1);
  for (std::size_t v = 0; v < cc.vertex_count; ++v) index[0][{v}] = v;
  for (std::size_t d = 1; d <= top; ++d) {
    const auto& cells = cc.cells[d - 1];
    for (std::size_t k = 0; k < cells.size(); ++k) {
      auto key = cells[k];
      for (auto v : key)
        if (v >= cc.vertex_count) raise(ErrorCode::NonClosedComplex, "cell corner out of range");
      std::sort(key.begin(), key.end());
      if (std::adjacent_find(key.begin(), key.end()) != key.end())
        raise(ErrorCode::NonClosedComplex, "cell with repeated corners");
      if (!index[d].emplace(key, k).second) raise(ErrorCode::NonClosedComplex, "duplicate cell");
    }
  }
  for (std::size_t d = 1; d <= top; ++d) {
    const auto& cells = cc.cells[d - 1];
    SparseMatrix B(ch.counts.back(), cells.size());
    // Built column-wise, stored row-wise.
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const auto& corners = cells[k];
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t side = 0; side < 2; ++side) {
          std::vector<std::size_t> face;
          for (std::size_t m = 0; m < corners.size(); ++m)
            if (((m >> i) & 1) == side) face.push_back(corners[m]);
          auto key = face;
          std::sort(key.begin(), key.end());
          auto it = index[d - 1].find(key);
          if (it == index[d - 1].end()) raise(ErrorCode::NonClosedComplex, "missing face of a " + std::to_string(d) + "-cell");
          int orient = 1;
          if (d > 1) {
            auto o = detail::relative_orientation(face, cc.cells[d - 2][it->second]);
            if (!o) raise(ErrorCode::NonClosedComplex, "face is not a sub-cube");
            orient = *o;
          }
          int sign = (i % 2 == 0 ? 1 : -1) * (side == 1 ? 1 : -1) * orient;
          B.add(it->second, k, sign);
        }
    }
    ch.boundary.push_back(std::move(B));
    ch.counts.push_back(cells.size());
  }
  for (std::size_t d = 2; d <= top; ++d)
    if (!product_is_zero(ch.boundary[d - 1], ch.boundary[d]))
      raise(ErrorCode::NonClosedComplex, "boundary of boundary is non-zero in degree " + std::to_string(d));
  return ch;
}

// Simplicial chain complex with d[v0..vk] = sum_i (-1)^i [v0..^vi..vk] on
// sorted simplices; vertices are the singletons.
inline ChainComplex simplicial_chain_complex(const SimplicialComplex& k) {
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index;
  for (const auto& s : k.simplices) {
    if (index.size() < s.size()) index.resize(s.size());
    index[s.size() - 1].emplace(s, 0);
  }
  ChainComplex ch;
  for (auto& level : index) {
    std::size_t n = 0;
    for (auto& [s, id] : level) id = n++;
    ch.counts.push_back(n);
  }
  if (ch.counts.empty()) ch.counts.push_back(0);
  ch.boundary.push_back(SparseMatrix(0, ch.counts[0]));
  for (std::size_t d = 1; d < index.size(); ++d) {
    SparseMatrix B(ch.counts[d - 1], ch.counts[d]);
    for (const auto& [s, col] : index[d])
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        auto it = index[d - 1].find(face);
        if (it == index[d - 1].end()) raise(ErrorCode::NonClosedComplex, "simplicial complex is not downward closed");
        B.add(it->second, col, i % 2 == 0 ? 1 : -1);
      }
    ch.boundary.push_back(std::move(B));
  }
  return ch;
}

struct HomologyGroup {
  std::size_t betti = 0;
  std::vector<Int> torsion;  // each > 1, in divisibility order

  bool is_zero() const { return betti == 0 && torsion.empty(); }
  bool operator==(const HomologyGroup&) const = default;
};

struct HomologyResult {
  bool reduced = true;
  bool empty_complex = false;  // reduced homology of the empty complex is Z in degree -1
  std::vector<HomologyGroup> groups;  // degrees 0 .. D

  std::size_t computed_through() const { return groups.empty() ? 0 : groups.size() - 1; }
  std::vector<std::size_t> betti() const {
    std::vector<std::size_t> b;
    for (const auto& g : groups) b.push_back(g.betti);
    return b;
  }
};

struct RankProfile {
  std::vector<std::size_t> rank;                   // rank of boundary[d]
  std::vector<std::vector<Int>> divisors;          // elementary divisors of boundary[d]
};

inline RankProfile rank_profile(const ChainComplex& ch) {
  RankProfile p;
  for (const auto& B : ch.boundary) {
    auto div = B.rows == 0 ? std::vector<Int>{} : elementary_divisors(B);
    p.rank.push_back(div.size());
    p.divisors.push_back(std::move(div));
  }
  return p;
}

// Integral homology through degree `through` (defaults to the top cell
// dimension). With `reduced` the augmentation C_0 -> Z is appended.
inline HomologyResult homology(const ChainComplex& ch, bool reduced = true, std::optional<std::size_t> through = {}) {
  HomologyResult h;
  h.reduced = reduced;
  const std::size_t top = ch.top();
  const std::size_t D = through.value_or(top);
  auto prof = rank_profile(ch);
  h.empty_complex = ch.counts.front() == 0;
  for (std::size_t d = 0; d <= D; ++d) {
    HomologyGroup g;
    if (d <= top) {
      std::size_t n = ch.counts[d];
      std::size_t out = d == 0 ? (reduced && n > 0 ? 1 : 0) : prof.rank[d];
      std::size_t in = d + 1 <= top ? prof.rank[d + 1] : 0;
      g.betti = n - out - in;
      if (d + 1 <= top)
        for (const auto& x : prof.divisors[d + 1])
          if (x > 1) g.torsion.push_back(x);
    }
    h.groups.push_back(std::move(g));
  }
  return h;
}

inline HomologyResult reduced_homology(const ChainComplex& ch, std::optional<std::size_t> through = {}) {
  return homology(ch, true, through);
}

struct Connectivity {
  // Largest n with reduced H_0..H_n zero; -1 when H_0 is non-zero and -2 for
  // the empty complex.
  std::int64_t value = -1;
  bool range_limited = false;  // every computed degree vanished; true value may be larger
};

inline Connectivity homological_connectivity(const HomologyResult& h) {
  if (h.empty_complex) return {-2, false};
  for (std::size_t d = 0; d < h.groups.size(); ++d)
    if (!h.groups[d].is_zero()) return {static_cast<std::int64_t>(d) - 1, false};
  return {static_cast<std::int64_t>(h.groups.size()) - 1, true};
}

// Betti numbers through exact rational ranks of dense boundary matrices;
// independent of the Smith reduction.
inline std::vector<std::size_t> betti_rational(const ChainComplex& ch, bool reduced = true) {
  std::vector<std::size_t> rk;
  for (const auto& B : ch.boundary) rk.push_back(B.rows == 0 ? 0 : rank_rational_gauss(B.dense()));
  std::vector<std::size_t> b;
  for (std::size_t d = 0; d <= ch.top(); ++d) {
    std::size_t out = d == 0 ? (reduced && ch.counts[0] > 0 ? 1 : 0) : rk[d];
    std::size_t in = d + 1 <= ch.top() ? rk[d + 1] : 0;
    b.push_back(ch.counts[d] - out - in);
  }
  return b;
}

// Betti numbers over F2. They exceed the rational ones exactly where the
// integral homology has even torsion in that degree or the one below.
inline std::vector<std::size_t> betti_f2(const ChainComplex& ch, bool reduced = true) {
  std::vector<std::size_t> rk;
  for (const auto& B : ch.boundary) rk.push_back(B.rows == 0 ? 0 : rank_f2(B));
  std::vector<std::size_t> b;
  for (std::size_t d = 0; d <= ch.top(); ++d) {
    std::size_t out = d == 0 ? (reduced && ch.counts[0] > 0 ? 1 : 0) : rk[d];
    std::size_t in = d + 1 <= ch.top() ? rk[d + 1] : 0;
    b.push_back(ch.counts[d] - out - in);
  }
  return b;
}

}  // namespace topraag
