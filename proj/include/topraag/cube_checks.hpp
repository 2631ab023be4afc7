#pragma once

// Local combinatorics of a ball: pockets, vertex links, and whether cubes
// meet in common faces.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "topraag/salvetti.hpp"

namespace topraag {

struct Pocket {
  std::size_t cube_a = 0, cube_b = 0;
  std::vector<std::pair<std::size_t, std::size_t>> shared_edges;
};

// Distinct squares sharing exactly three corners, i.e. two adjacent edges.
template <ElementEngine E>
std::vector<Pocket> detect_pockets(const CubeBall<E>& ball) {
  std::vector<Pocket> out;
  for (std::size_t a = 0; a < ball.cubes.size(); ++a) {
    if (ball.cubes[a].dim() != 2) continue;
    std::set<std::size_t> partners;
    for (auto v : ball.cubes[a].key)
      for (auto b : ball.cubes_at[v])
        if (b > a && ball.cubes[b].dim() == 2) partners.insert(b);
    for (auto b : partners) {
      std::vector<std::size_t> shared;
      std::set_intersection(ball.cubes[a].key.begin(), ball.cubes[a].key.end(), ball.cubes[b].key.begin(),
                            ball.cubes[b].key.end(), std::back_inserter(shared));
      if (shared.size() != 3) continue;
      Pocket p{a, b, {}};
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
          std::vector<std::size_t> e{shared[i], shared[j]};
          if (ball.cube_index.count(e)) p.shared_edges.emplace_back(shared[i], shared[j]);
        }
      out.push_back(p);
    }
  }
  return out;
}

// Whether `shared` is the vertex set of a face of the cube with the given
// corner list (corner of position mask at index mask).
inline bool is_face(const std::vector<std::size_t>& corners, const std::vector<std::size_t>& shared) {
  std::vector<std::size_t> masks;
  for (std::size_t m = 0; m < corners.size(); ++m)
    if (std::binary_search(shared.begin(), shared.end(), corners[m])) masks.push_back(m);
  if (masks.size() != shared.size() || masks.empty()) return false;
  std::size_t all_and = ~std::size_t{0}, all_or = 0;
  for (auto m : masks) {
    all_and &= m;
    all_or |= m;
  }
  std::size_t free = all_and ^ all_or;
  return masks.size() == (std::size_t{1} << __builtin_popcountll(free));
}

struct LinkVerdict {
  std::size_t vertex = 0;
  std::size_t link_vertices = 0;
  std::size_t link_simplices = 0;
  bool simplicial = true;  // no two cubes give the same simplex
  bool flag = true;
};

struct LinkReport {
  std::vector<LinkVerdict> vertices;
  bool all_flag = true;
  bool face_condition = true;
  std::vector<std::pair<std::size_t, std::size_t>> face_violations;  // cube pairs
};

// Cubes pairwise meet in a common face (or not at all).
template <ElementEngine E>
std::vector<std::pair<std::size_t, std::size_t>> face_violations(const CubeBall<E>& ball) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < ball.cubes.size(); ++a) {
    std::set<std::size_t> partners;
    for (auto v : ball.cubes[a].key)
      for (auto b : ball.cubes_at[v])
        if (b > a) partners.insert(b);
    for (auto b : partners) {
      std::vector<std::size_t> shared;
      std::set_intersection(ball.cubes[a].key.begin(), ball.cubes[a].key.end(), ball.cubes[b].key.begin(),
                            ball.cubes[b].key.end(), std::back_inserter(shared));
      if (!is_face(ball.cubes[a].corners, shared) || !is_face(ball.cubes[b].corners, shared))
        out.emplace_back(a, b);
    }
  }
  return out;
}

template <ElementEngine E>
LinkVerdict link_at(const CubeBall<E>& ball, std::size_t v) {
  LinkVerdict res;
  res.vertex = v;
  std::set<std::vector<std::size_t>> simplices;
  std::set<std::size_t> link_vertices;
  for (auto c : ball.cubes_at[v]) {
    const auto& cube = ball.cubes[c];
    std::size_t pos = static_cast<std::size_t>(std::find(cube.corners.begin(), cube.corners.end(), v) - cube.corners.begin());
    std::vector<std::size_t> simplex;
    for (std::size_t b = 0; b < cube.dim(); ++b) simplex.push_back(cube.corners[pos ^ (std::size_t{1} << b)]);
    std::sort(simplex.begin(), simplex.end());
    if (!simplices.insert(simplex).second) res.simplicial = false;
    link_vertices.insert(simplex.begin(), simplex.end());
  }
  res.link_vertices = link_vertices.size();
  res.link_simplices = simplices.size();
  // Flag: every clique of the link's 1-skeleton spans a simplex.
  std::vector<std::size_t> lv(link_vertices.begin(), link_vertices.end());
  auto joined = [&](std::size_t x, std::size_t y) {
    std::vector<std::size_t> e{std::min(x, y), std::max(x, y)};
    return simplices.count(e) > 0;
  };
  std::vector<std::size_t> clique;
  std::function<void(std::size_t)> grow = [&](std::size_t start) {
    if (clique.size() >= 2 && !simplices.count(clique)) res.flag = false;
    for (std::size_t i = start; i < lv.size() && res.flag; ++i) {
      if (!std::all_of(clique.begin(), clique.end(), [&](std::size_t w) { return joined(w, lv[i]); })) continue;
      clique.push_back(lv[i]);
      grow(i + 1);
      clique.pop_back();
    }
  };
  grow(0);
  return res;
}

template <ElementEngine E>
LinkReport check_links(const CubeBall<E>& ball) {
  auto interior = ball.interior_vertices();
  if (interior.empty()) raise(ErrorCode::NoInteriorVertices, "radius too small for the cube dimension");
  LinkReport rep;
  for (auto v : interior) {
    auto l = link_at(ball, v);
    if (!l.flag || !l.simplicial) rep.all_flag = false;
    rep.vertices.push_back(l);
  }
  rep.face_violations = face_violations(ball);
  rep.face_condition = rep.face_violations.empty();
  return rep;
}

}  // namespace topraag
