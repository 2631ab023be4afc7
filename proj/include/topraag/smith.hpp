#pragma once

// Integer matrix reductions: Smith normal form with transforms (dense),
// elementary divisors of large sparse boundary matrices, and exact ranks over
// Q and F2 used as cross-checks.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace topraag {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> data;  // row-major

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rs) {
    IntMatrix m(rs.size(), rs.empty() ? 0 : rs.front().size());
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rs[i][j];
    return m;
  }

  Int& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  bool is_zero() const {
    return std::all_of(data.begin(), data.end(), [](const Int& x) { return x == 0; });
  }
  bool operator==(const IntMatrix&) const = default;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
      for (std::size_t k = 0; k < a.cols; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
};

struct SmithResult {
  IntMatrix D;                // diagonal, d_i | d_{i+1}
  IntMatrix P;                // rows x rows, unimodular
  IntMatrix Q;                // cols x cols, unimodular
  std::vector<Int> divisors;  // non-zero diagonal entries, positive

  std::size_t rank() const { return divisors.size(); }
};

namespace detail {

inline void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(a, j), m(b, j));
}
inline void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows; ++i) std::swap(m(i, a), m(i, b));
}
// row a += k * row b
inline void add_row(IntMatrix& m, std::size_t a, std::size_t b, const Int& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < m.cols; ++j)
    if (m(b, j) != 0) m(a, j) += k * m(b, j);
}
inline void add_col(IntMatrix& m, std::size_t a, std::size_t b, const Int& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < m.rows; ++i)
    if (m(i, b) != 0) m(i, a) += k * m(i, b);
}
inline void negate_row(IntMatrix& m, std::size_t a) {
  for (std::size_t j = 0; j < m.cols; ++j) m(a, j) = -m(a, j);
}

// Floor-free quotient used for Euclid steps; any q works as long as the
// remainder is smaller than the pivot in absolute value.
inline Int quotient(const Int& a, const Int& b) { return a / b; }

}  // namespace detail

// Returns D with P * M * Q = D. Pivots on the smallest non-zero entry of the
// remaining block; a final pass enforces the divisibility chain.
inline SmithResult smith_normal_form(const IntMatrix& M) {
  using namespace detail;
  SmithResult r{M, IntMatrix::identity(M.rows), IntMatrix::identity(M.cols), {}};
  IntMatrix& D = r.D;
  const std::size_t n = std::min(D.rows, D.cols);

  // Row operations on D are mirrored on P, column operations on Q.
  auto row_swap = [&](std::size_t a, std::size_t b) { swap_rows(D, a, b), swap_rows(r.P, a, b); };
  auto col_swap = [&](std::size_t a, std::size_t b) { swap_cols(D, a, b), swap_cols(r.Q, a, b); };
  auto row_add = [&](std::size_t a, std::size_t b, const Int& k) { add_row(D, a, b, k), add_row(r.P, a, b, k); };
  auto col_add = [&](std::size_t a, std::size_t b, const Int& k) { add_col(D, a, b, k), add_col(r.Q, a, b, k); };

  std::size_t t = 0;
  for (; t < n; ++t) {
    for (;;) {
      // Smallest non-zero entry of the block [t.., t..].
      std::size_t pi = D.rows, pj = D.cols;
      Int best = 0;
      for (std::size_t i = t; i < D.rows; ++i)
        for (std::size_t j = t; j < D.cols; ++j) {
          const Int& x = D(i, j);
          if (x == 0) continue;
          Int ax = abs(x);
          if (pi == D.rows || ax < best) pi = i, pj = j, best = ax;
        }
      if (pi == D.rows) goto done;
      row_swap(t, pi);
      col_swap(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < D.rows; ++i) {
        if (D(i, t) == 0) continue;
        row_add(i, t, -quotient(D(i, t), D(t, t)));
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < D.cols; ++j) {
        if (D(t, j) == 0) continue;
        col_add(j, t, -quotient(D(t, j), D(t, t)));
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // The pivot must divide the whole remaining block.
      bool divides = true;
      for (std::size_t i = t + 1; i < D.rows && divides; ++i)
        for (std::size_t j = t + 1; j < D.cols; ++j)
          if (D(i, j) % D(t, t) != 0) {
            row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      negate_row(D, t);
      negate_row(r.P, t);
    }
  }
done:
  for (std::size_t i = 0; i < t; ++i) r.divisors.push_back(D(i, i));
  return r;
}

// Enforces d_1 | d_2 | ... on a list of positive integers via gcd/lcm swaps.
inline std::vector<Int> divisibility_chain(std::vector<Int> d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Int g = gcd(d[i], d[j]);
      if (g == d[i]) continue;
      Int l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  return d;
}

// Sparse integer matrix stored by rows; used for boundary maps.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::size_t, long long>>> entries;  // per row, sorted by column

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r) {}
  void add(std::size_t i, std::size_t j, long long v) {
    auto& row = entries[i];
    auto it = std::lower_bound(row.begin(), row.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != row.end() && it->first == j) {
      it->second += v;
      if (it->second == 0) row.erase(it);
    } else if (v != 0) {
      row.insert(it, {j, v});
    }
  }
  long long at(std::size_t i, std::size_t j) const {
    const auto& row = entries[i];
    auto it = std::lower_bound(row.begin(), row.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
    return it != row.end() && it->first == j ? it->second : 0;
  }
  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : entries) n += r.size();
    return n;
  }
  IntMatrix dense() const {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (auto [j, v] : entries[i]) m(i, j) = v;
    return m;
  }
};

// Product of sparse matrices; exact check for boundary-of-boundary.
inline bool product_is_zero(const SparseMatrix& a, const SparseMatrix& b) {
  // a: p x q, b: q x r
  for (std::size_t i = 0; i < a.rows; ++i) {
    std::unordered_map<std::size_t, Int> acc;
    for (auto [k, v] : a.entries[i])
      for (auto [j, w] : b.entries[k]) acc[j] += Int(v) * w;
    for (const auto& [j, x] : acc)
      if (x != 0) return false;
  }
  return true;
}

// Elementary divisors of a sparse integer matrix. Unit pivots are eliminated
// with Markowitz ordering; the residual block goes through the dense Smith
// normal form.
inline std::vector<Int> elementary_divisors(const SparseMatrix& M) {
  using Row = std::vector<std::pair<std::size_t, Int>>;
  std::vector<Row> rows(M.rows);
  std::vector<std::vector<std::size_t>> col_rows(M.cols);  // may hold stale row ids
  for (std::size_t i = 0; i < M.rows; ++i) {
    for (auto [j, v] : M.entries[i]) {
      rows[i].push_back({j, Int(v)});
      col_rows[j].push_back(i);
    }
  }
  std::vector<bool> row_alive(M.rows, true), col_alive(M.cols, true);
  std::vector<std::size_t> col_count(M.cols, 0);
  for (const auto& r : rows)
    for (const auto& e : r) ++col_count[e.first];

  auto find = [](const Row& r, std::size_t j) -> const Int* {
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
    return it != r.end() && it->first == j ? &it->second : nullptr;
  };

  std::size_t units = 0;
  for (;;) {
    std::size_t bi = M.rows, bj = 0, best = SIZE_MAX;
    for (std::size_t i = 0; i < M.rows; ++i) {
      if (!row_alive[i] || rows[i].empty()) continue;
      for (const auto& [j, v] : rows[i]) {
        if (v != 1 && v != -1) continue;
        std::size_t cost = (rows[i].size() - 1) * (col_count[j] - 1);
        if (cost < best) best = cost, bi = i, bj = j;
        if (best == 0) break;
      }
      if (best == 0) break;
    }
    if (bi == M.rows) break;
    ++units;
    const Row pivot = rows[bi];
    const Int pv = *find(pivot, bj);
    row_alive[bi] = false;
    for (const auto& e : pivot) --col_count[e.first];
    rows[bi].clear();
    col_alive[bj] = false;
    std::vector<std::size_t> targets;
    for (auto i : col_rows[bj])
      if (row_alive[i] && find(rows[i], bj)) targets.push_back(i);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (auto i : targets) {
      const Int k = *find(rows[i], bj) * pv;  // pv = +-1, so k * pivot clears column bj
      Row merged;
      merged.reserve(rows[i].size() + pivot.size());
      std::size_t a = 0, b = 0;
      const Row& r = rows[i];
      while (a < r.size() || b < pivot.size()) {
        if (b == pivot.size() || (a < r.size() && r[a].first < pivot[b].first)) {
          merged.push_back(r[a++]);
        } else if (a == r.size() || pivot[b].first < r[a].first) {
          Int v = -k * pivot[b].second;
          merged.push_back({pivot[b].first, v});
          ++col_count[pivot[b].first];
          col_rows[pivot[b].first].push_back(i);
          ++b;
        } else {
          Int v = r[a].second - k * pivot[b].second;
          if (v != 0) merged.push_back({r[a].first, v});
          else --col_count[r[a].first];
          ++a, ++b;
        }
      }
      rows[i] = std::move(merged);
    }
    col_rows[bj].clear();
  }

  // Residual block.
  std::vector<std::size_t> live_rows, live_cols;
  std::vector<std::size_t> col_pos(M.cols, SIZE_MAX);
  for (std::size_t i = 0; i < M.rows; ++i)
    if (row_alive[i] && !rows[i].empty()) live_rows.push_back(i);
  for (auto i : live_rows)
    for (const auto& e : rows[i])
      if (col_pos[e.first] == SIZE_MAX) {
        col_pos[e.first] = live_cols.size();
        live_cols.push_back(e.first);
      }
  std::vector<Int> divisors(units, Int(1));
  if (!live_rows.empty()) {
    IntMatrix rest(live_rows.size(), live_cols.size());
    for (std::size_t a = 0; a < live_rows.size(); ++a)
      for (const auto& [j, v] : rows[live_rows[a]]) rest(a, col_pos[j]) = v;
    for (const auto& d : smith_normal_form(rest).divisors) divisors.push_back(d);
  }
  return divisibility_chain(std::move(divisors));
}

// Exact rank over Q by fraction-free (Bareiss) elimination.
inline std::size_t rank_rational(const IntMatrix& M) {
  IntMatrix A = M;
  std::size_t rank = 0;
  Int prev = 1;
  std::vector<bool> used(A.rows, false);
  for (std::size_t j = 0; j < A.cols && rank < A.rows; ++j) {
    std::size_t p = A.rows;
    for (std::size_t i = rank; i < A.rows; ++i)
      if (A(i, j) != 0) {
        p = i;
        break;
      }
    if (p == A.rows) continue;
    detail::swap_rows(A, rank, p);
    for (std::size_t i = rank + 1; i < A.rows; ++i) {
      for (std::size_t k = j + 1; k < A.cols; ++k) A(i, k) = (A(rank, j) * A(i, k) - A(i, j) * A(rank, k)) / prev;
      A(i, j) = 0;
    }
    prev = A(rank, j);
    ++rank;
  }
  return rank;
}

// Rank over Q through explicit rational arithmetic; independent of Bareiss.
inline std::size_t rank_rational_gauss(const IntMatrix& M) {
  std::vector<std::vector<Rational>> A(M.rows, std::vector<Rational>(M.cols));
  for (std::size_t i = 0; i < M.rows; ++i)
    for (std::size_t j = 0; j < M.cols; ++j) A[i][j] = Rational(M(i, j));
  std::size_t rank = 0;
  for (std::size_t j = 0; j < M.cols && rank < M.rows; ++j) {
    std::size_t p = M.rows;
    for (std::size_t i = rank; i < M.rows; ++i)
      if (A[i][j] != 0) {
        p = i;
        break;
      }
    if (p == M.rows) continue;
    std::swap(A[rank], A[p]);
    for (std::size_t i = 0; i < M.rows; ++i) {
      if (i == rank || A[i][j] == 0) continue;
      Rational f = A[i][j] / A[rank][j];
      for (std::size_t k = j; k < M.cols; ++k) A[i][k] -= f * A[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Rank over the field with two elements.
inline std::size_t rank_f2(const SparseMatrix& M) {
  const std::size_t words = (M.cols + 63) / 64;
  std::vector<std::vector<std::uint64_t>> A(M.rows, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < M.rows; ++i)
    for (auto [j, v] : M.entries[i])
      if (v % 2 != 0) A[i][j / 64] |= std::uint64_t{1} << (j % 64);
  std::size_t rank = 0;
  for (std::size_t j = 0; j < M.cols && rank < M.rows; ++j) {
    const std::uint64_t bit = std::uint64_t{1} << (j % 64);
    std::size_t p = M.rows;
    for (std::size_t i = rank; i < M.rows; ++i)
      if (A[i][j / 64] & bit) {
        p = i;
        break;
      }
    if (p == M.rows) continue;
    std::swap(A[rank], A[p]);
    for (std::size_t i = rank + 1; i < M.rows; ++i)
      if (A[i][j / 64] & bit)
        for (std::size_t w = j / 64; w < words; ++w) A[i][w] ^= A[rank][w];
    ++rank;
  }
  return rank;
}

}  // namespace topraag
