#pragma once

// Degree-indexed rational homology dimensions with values in
// N + {countably infinite} + {unknown}.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "topraag/error.hpp"

namespace topraag {

class DimValue {
 public:
  enum class Kind { Finite, Infinite, Unknown };

  constexpr DimValue() = default;
  constexpr DimValue(std::uint64_t n) : n_(n) {}  // NOLINT: implicit from counts
  static constexpr DimValue inf() { return DimValue(Kind::Infinite); }
  static constexpr DimValue unknown() { return DimValue(Kind::Unknown); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool finite() const { return kind_ == Kind::Finite; }
  constexpr bool infinite() const { return kind_ == Kind::Infinite; }
  constexpr bool is_unknown() const { return kind_ == Kind::Unknown; }
  constexpr bool is_zero() const { return finite() && n_ == 0; }
  constexpr std::uint64_t value() const { return n_; }
  constexpr bool operator==(const DimValue&) const = default;

  std::string str() const {
    if (infinite()) return "inf";
    if (is_unknown()) return "unknown";
    return std::to_string(n_);
  }

  // Cardinal arithmetic. Unknown absorbs except where every possible value
  // gives the same answer: x + inf = inf and 0 * x = 0.
  friend DimValue operator+(DimValue a, DimValue b) {
    if (a.infinite() || b.infinite()) return inf();
    if (a.is_unknown() || b.is_unknown()) return unknown();
    std::uint64_t r;
    if (__builtin_add_overflow(a.n_, b.n_, &r)) raise(ErrorCode::Overflow, "dimension sum overflows");
    return r;
  }
  friend DimValue operator*(DimValue a, DimValue b) {
    if (a.is_zero() || b.is_zero()) return 0;
    if (a.is_unknown() || b.is_unknown()) return unknown();
    if (a.infinite() || b.infinite()) return inf();
    std::uint64_t r;
    if (__builtin_mul_overflow(a.n_, b.n_, &r)) raise(ErrorCode::Overflow, "dimension product overflows");
    return r;
  }

 private:
  constexpr explicit DimValue(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  std::uint64_t n_ = 0;
};

class GradedDim {
 public:
  GradedDim() = default;
  // dims[i] is the value in degree i; every higher degree takes `tail`.
  GradedDim(std::vector<DimValue> dims, DimValue tail = 0) : tail_(tail) {
    for (std::size_t i = 0; i < dims.size(); ++i) set(i, dims[i]);
  }

  DimValue operator[](std::size_t d) const {
    auto it = dims_.find(d);
    return it == dims_.end() ? tail_ : it->second;
  }
  void set(std::size_t d, DimValue v) {
    if (v == tail_) dims_.erase(d);
    else dims_[d] = v;
  }
  DimValue tail() const { return tail_; }
  // Values differing from the tail.
  const std::map<std::size_t, DimValue>& explicit_dims() const { return dims_; }
  // Past this degree every value equals the tail.
  std::size_t span() const { return dims_.empty() ? 0 : dims_.rbegin()->first + 1; }

  bool operator==(const GradedDim& o) const { return tail_ == o.tail_ && dims_ == o.dims_; }

  // Fixes a value in every degree from `from` on.
  void set_tail_from(std::size_t from, DimValue v) {
    std::map<std::size_t, DimValue> keep;
    for (std::size_t d = 0; d < std::max(from, span()); ++d) {
      DimValue x = d < from ? (*this)[d] : v;
      if (!(x == v)) keep[d] = x;
    }
    dims_ = std::move(keep);
    tail_ = v;
  }

 private:
  std::map<std::size_t, DimValue> dims_;
  DimValue tail_ = 0;
};

// c_n = sum_{p+q=n} a_p b_q; over Q the Tor terms vanish. When both tails are
// non-zero finite the sequence grows without bound and the tail is reported
// unknown.
inline GradedDim kunneth(const GradedDim& a, const GradedDim& b) {
  const std::size_t A = a.span(), B = b.span();
  const std::size_t N = A + B + 1;  // c_n for n >= N has the tail computed below
  std::vector<DimValue> c(N, 0);
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t p = 0; p <= n; ++p) c[n] = c[n] + a[p] * b[n - p];
  // For n >= N: terms with p < A pair a_p with b's tail, terms with q < B pair
  // b_q with a's tail, and n - A - B + 1 >= 2 terms pair the two tails.
  DimValue head = 0;
  for (std::size_t p = 0; p < A; ++p) head = head + a[p] * b.tail();
  for (std::size_t q = 0; q < B; ++q) head = head + a.tail() * b[q];
  DimValue mid = a.tail() * b.tail();
  DimValue tail;
  if (mid.finite() && mid.value() > 0) tail = DimValue::unknown();
  else tail = head + mid + mid;  // mid is 0, inf or unknown: repetition does not change it
  GradedDim out(c, tail);
  return out;
}

// Degree 0 equals 1, every other degree is known to vanish.
inline bool is_q_acyclic(const GradedDim& a) {
  if (!(a[0] == DimValue(1))) return false;
  if (!a.tail().is_zero()) return false;
  for (const auto& [d, v] : a.explicit_dims())
    if (d > 0 && !v.is_zero()) return false;
  return true;
}

// Rational homology of the Bieri-Stallings group SB_n over a Q-acyclic U:
// degree n+1 is countably infinite, higher degrees vanish, degrees 1..n are
// not determined.
inline GradedDim sb_homology(std::size_t n) {
  GradedDim g;
  g.set(0, 1);
  for (std::size_t d = 1; d <= n; ++d) g.set(d, DimValue::unknown());
  g.set(n + 1, DimValue::inf());
  return g;
}

using Rational = boost::multiprecision::cpp_rational;

// chi(H) = chi(U) - |X| chi(O) for the HNN extension with |X| stable letters;
// Euler additivity along the Mayer-Vietoris sequence of the Bass-Serre tree.
inline Rational hnn_euler(const Rational& chi_U, const Rational& chi_O, std::uint64_t stable_letters) {
  return chi_U - Rational(stable_letters) * chi_O;
}

// Alternating sum; nullopt unless every degree is finite and the support is
// bounded.
inline std::optional<Rational> euler_characteristic(const GradedDim& a) {
  if (!a.tail().is_zero()) return std::nullopt;
  Rational chi = 0;
  for (const auto& [d, v] : a.explicit_dims()) {
    if (!v.finite()) return std::nullopt;
    chi += (d % 2 == 0 ? 1 : -1) * Rational(v.value());
  }
  return chi;
}

}  // namespace topraag
