#pragma once

// Valleys and Morse sublevel sets of the fundamental apartment. The apartment
// is the universal cover of the Salvetti complex of the abstract RAAG, which
// is realised as the ball of the trivial model.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "topraag/error.hpp"
#include "topraag/graph.hpp"
#include "topraag/homology.hpp"
#include "topraag/normal_sequence.hpp"
#include "topraag/salvetti.hpp"

namespace topraag {

using ApartmentEngine = NormalSequenceEngine<TrivialModel>;
using ApartmentBall = CubeBall<ApartmentEngine>;

// Full subcomplex spanned by the vertices accepted by `keep`; `vertex_map`
// receives the ball index of each complex vertex.
template <ElementEngine E>
CellComplex subcomplex(const CubeBall<E>& ball, const std::function<bool(std::size_t)>& keep,
                       std::vector<std::size_t>* vertex_map = nullptr) {
  std::vector<std::size_t> local(ball.vertices.size(), SIZE_MAX);
  CellComplex cc;
  for (std::size_t v = 0; v < ball.vertices.size(); ++v)
    if (keep(v)) {
      local[v] = cc.vertex_count++;
      if (vertex_map) vertex_map->push_back(v);
    }
  for (const auto& c : ball.cubes) {
    if (!std::all_of(c.corners.begin(), c.corners.end(), [&](std::size_t v) { return local[v] != SIZE_MAX; }))
      continue;
    std::vector<std::size_t> corners;
    for (auto v : c.corners) corners.push_back(local[v]);
    cc.add_cell(std::move(corners));
  }
  return cc;
}

template <ElementEngine E>
CellComplex to_cell_complex(const CubeBall<E>& ball) {
  return subcomplex(ball, [](std::size_t) { return true; });
}

// Cubes b Q_T with e(b) + |T| <= t: the full subcomplex on vertices of
// exponent at most t, since e(b) + |T| is the largest corner exponent.
template <ElementEngine E>
CellComplex sublevel_complex(const CubeBall<E>& ball, std::int64_t t,
                             std::vector<std::size_t>* vertex_map = nullptr) {
  return subcomplex(ball, [&](std::size_t v) { return ball.vertices[v].exp <= t; }, vertex_map);
}

struct ValleyWindow {
  std::int64_t e_lo = 0;
  std::int64_t e_hi = 0;
  std::size_t radius = 0;  // word length of the vertex representatives
};

inline ValleyWindow default_window(std::int64_t t, std::size_t radius) {
  return {t - static_cast<std::int64_t>(radius), t, radius};
}

// The valley at latitude t cut down to the window; every vertex satisfies
// e_lo <= e <= min(e_hi, t) and lies within word distance `radius` of 1U.
struct ValleyTruncation {
  ApartmentBall ball;
  CellComplex complex;
  std::vector<std::size_t> vertex_map;  // complex vertex -> ball vertex
};

inline ValleyTruncation valley_cells(const Graph& g, std::int64_t t, const ValleyWindow& w,
                                     const ResourceCaps& caps = {}) {
  if (!is_connected(g)) raise(ErrorCode::DisconnectedGraph, "valleys need a connected graph");
  if (w.e_lo > w.e_hi) raise(ErrorCode::EmptyWindow, "exponent range is empty");
  ApartmentEngine eng(TrivialModel{}, g);
  ValleyTruncation v{build_ball(eng, w.radius, caps), {}, {}};
  const std::int64_t hi = std::min(w.e_hi, t);
  v.complex = subcomplex(
      v.ball, [&](std::size_t i) { return v.ball.vertices[i].exp >= w.e_lo && v.ball.vertices[i].exp <= hi; },
      &v.vertex_map);
  return v;
}

// Rational ranks of H~_k(A) -> H~_k(X) for A the full subcomplex of X on the
// vertices flagged in `in_a`. Uses
//   rank im = dim Z_k(A) - rank d_{k+1}^X + rank(d_{k+1}^X on rows outside A),
// since B_k(X) meets C_k(A) in a subspace of Z_k(A).
inline std::vector<std::size_t> inclusion_image_ranks(const CellComplex& x, const std::vector<bool>& in_a,
                                                      std::size_t through) {
  auto ch = chain_complex(x);
  const std::size_t top = ch.top();
  // Which cells of X lie in A, per degree.
  std::vector<std::vector<bool>> inside(top + 1);
  inside[0] = in_a;
  for (std::size_t d = 1; d <= top; ++d)
    for (const auto& c : x.cells[d - 1])
      inside[d].push_back(std::all_of(c.begin(), c.end(), [&](std::size_t v) { return in_a[v]; }));
  auto restrict = [](const SparseMatrix& m, const std::vector<bool>& keep_rows, const std::vector<bool>* keep_cols) {
    std::vector<std::size_t> row_id(m.rows, SIZE_MAX), col_id(m.cols, SIZE_MAX);
    std::size_t r = 0, c = 0;
    for (std::size_t i = 0; i < m.rows; ++i)
      if (keep_rows[i]) row_id[i] = r++;
    for (std::size_t j = 0; j < m.cols; ++j)
      if (!keep_cols || (*keep_cols)[j]) col_id[j] = c++;
    SparseMatrix out(r, c);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (row_id[i] == SIZE_MAX) continue;
      for (auto [j, v] : m.entries[i])
        if (col_id[j] != SIZE_MAX) out.entries[row_id[i]].push_back({col_id[j], v});
    }
    return out;
  };
  auto rank = [](const SparseMatrix& m) { return m.rows == 0 ? std::size_t{0} : elementary_divisors(m).size(); };
  auto negate = [](std::vector<bool> v) {
    v.flip();
    return v;
  };
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= through; ++k) {
    if (k > top) {
      out.push_back(0);
      continue;
    }
    const std::size_t n_a = static_cast<std::size_t>(std::count(inside[k].begin(), inside[k].end(), true));
    std::size_t z = n_a;
    if (k == 0) z -= n_a > 0 ? 1 : 0;
    else z -= rank(restrict(ch.boundary[k], inside[k - 1], &inside[k]));
    std::size_t r_x = 0, r_out = 0;
    if (k + 1 <= top) {
      r_x = rank(ch.boundary[k + 1]);
      r_out = rank(restrict(ch.boundary[k + 1], negate(inside[k]), nullptr));
    }
    out.push_back(z - r_x + r_out);
  }
  return out;
}

// Homology estimates for the valley V_t cut to word-radius R. The raw
// truncation can carry boundary artefacts (for C4, vertices at distance
// exactly R whose normal forms end in negative letters only are isolated), so
// the estimate used for assertions is the image of H~(V cut at R) in H~(V cut
// at R+1). The estimate counts as stabilised when the vanishing pattern of
// the images at R and R+1 agree; ranks grow with R when H~ is infinitely
// generated.
struct StabilisedHomology {
  std::size_t radius = 0;
  HomologyResult raw_r;                   // integral H~ of the truncation at R
  HomologyResult raw_r1;                  // at R+1
  std::vector<std::size_t> image_r;       // ranks of H~(R) -> H~(R+1)
  std::vector<std::size_t> image_r1;      // ranks of H~(R+1) -> H~(R+2)
  bool stabilised = false;

  bool vanishes(std::size_t k) const { return image_r.at(k) == 0; }
};

inline StabilisedHomology valley_homology(const Graph& g, std::int64_t t, std::size_t radius,
                                          const ResourceCaps& caps = {}) {
  const std::size_t through = clique_number(g);
  auto big = valley_cells(g, t, default_window(t, radius + 2), caps);
  auto level = [&](std::size_t r) {
    std::vector<bool> in(big.complex.vertex_count);
    for (std::size_t v = 0; v < in.size(); ++v) {
      const auto& bv = big.ball.vertices[big.vertex_map[v]];
      in[v] = bv.dist <= r && bv.exp >= t - static_cast<std::int64_t>(r);
    }
    return in;
  };
  auto cut = [&](std::size_t r, std::vector<std::size_t>* map) {
    auto in = level(r);
    CellComplex c;
    std::vector<std::size_t> local(in.size(), SIZE_MAX);
    for (std::size_t v = 0; v < in.size(); ++v)
      if (in[v]) {
        local[v] = c.vertex_count++;
        if (map) map->push_back(v);
      }
    for (const auto& cells : big.complex.cells)
      for (const auto& cell : cells) {
        if (!std::all_of(cell.begin(), cell.end(), [&](std::size_t v) { return in[v]; })) continue;
        std::vector<std::size_t> corners;
        for (auto v : cell) corners.push_back(local[v]);
        c.add_cell(std::move(corners));
      }
    return c;
  };
  auto image = [&](std::size_t r) {
    std::vector<std::size_t> map;
    auto x = cut(r + 1, &map);
    auto in_outer = level(r);
    std::vector<bool> in(map.size());
    for (std::size_t v = 0; v < map.size(); ++v) in[v] = in_outer[map[v]];
    return inclusion_image_ranks(x, in, through);
  };
  StabilisedHomology s;
  s.radius = radius;
  s.raw_r = reduced_homology(chain_complex(cut(radius, nullptr)), through);
  s.raw_r1 = reduced_homology(chain_complex(cut(radius + 1, nullptr)), through);
  s.image_r = image(radius);
  s.image_r1 = image(radius + 1);
  s.stabilised = true;
  for (std::size_t k = 0; k <= through; ++k)
    if ((s.image_r[k] == 0) != (s.image_r1[k] == 0)) s.stabilised = false;
  return s;
}

}  // namespace topraag
