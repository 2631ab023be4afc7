#pragma once

// Computable models of an injective homomorphism phi: O -> U.

#include <algorithm>
#include <cctype>
#include <concepts>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "topraag/error.hpp"

namespace topraag {

using Rng = std::mt19937_64;

// Checked 64-bit arithmetic; overflow is reported, never wrapped.
namespace checked {
inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) raise(ErrorCode::Overflow, "integer addition");
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) raise(ErrorCode::Overflow, "integer subtraction");
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) raise(ErrorCode::Overflow, "integer multiplication");
  return r;
}
inline std::int64_t pow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) r = mul(r, b);
  return r;
}
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}
}  // namespace checked

template <typename M>
concept BaseModel = requires(const M& m, typename M::Element e, const std::string& s, Rng& rng) {
  typename M::Element;
  { m.identity() } -> std::same_as<typename M::Element>;
  { m.mul(e, e) } -> std::same_as<typename M::Element>;
  { m.inv(e) } -> std::same_as<typename M::Element>;
  { m.in_O(e) } -> std::same_as<bool>;
  { m.in_phiO(e) } -> std::same_as<bool>;
  { m.phi(e) } -> std::same_as<typename M::Element>;
  { m.phi_inv(e) } -> std::same_as<typename M::Element>;
  { m.decompose(e) } -> std::same_as<std::pair<typename M::Element, typename M::Element>>;
  { m.decompose_phi(e) } -> std::same_as<std::pair<typename M::Element, typename M::Element>>;
  { m.left_transversal_O() } -> std::same_as<std::vector<typename M::Element>>;
  { m.left_transversal_phiO() } -> std::same_as<std::vector<typename M::Element>>;
  { m.index_O() } -> std::same_as<std::uint64_t>;
  { m.index_phiO() } -> std::same_as<std::uint64_t>;
  { m.is_automorphic() } -> std::same_as<bool>;
  { m.is_shrinking() } -> std::same_as<bool>;
  { m.format(e) } -> std::same_as<std::string>;
  { m.parse(s) } -> std::same_as<std::optional<typename M::Element>>;
  { m.sample(rng) } -> std::same_as<typename M::Element>;
  { m.name() } -> std::same_as<std::string>;
};

// ---------------------------------------------------------------------------
// Permutations

using Perm = std::vector<std::uint8_t>;  // 0-based images

inline Perm perm_identity(std::size_t n) {
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint8_t>(i);
  return p;
}

// (p*q)(i) = p(q(i)): q acts first.
inline Perm perm_mul(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
  return r;
}

inline Perm perm_inv(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint8_t>(i);
  return r;
}

inline std::size_t perm_support_max(const Perm& p) {
  std::size_t m = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) m = i + 1;
  return m;
}

// Order: largest moved point first, then images lexicographically. With this
// order the transposition (12) precedes (13) and (23).
inline bool perm_less(const Perm& a, const Perm& b) {
  auto ma = perm_support_max(a), mb = perm_support_max(b);
  if (ma != mb) return ma < mb;
  return a < b;
}

inline Perm perm_from_one_line(const std::vector<int>& images) {
  Perm p;
  std::vector<bool> seen(images.size(), false);
  for (int x : images) {
    if (x < 1 || static_cast<std::size_t>(x) > images.size() || seen[x - 1])
      raise(ErrorCode::InvalidModel, "not a permutation in one-line notation");
    seen[x - 1] = true;
    p.push_back(static_cast<std::uint8_t>(x - 1));
  }
  return p;
}

// Cycle notation with 1-based points, e.g. "(1,2,3)(4,5)" or "(123)" for degree <= 9.
inline std::optional<Perm> perm_from_cycles(const std::string& s, std::size_t degree) {
  Perm p = perm_identity(degree);
  std::size_t i = 0;
  if (s == "e" || s == "()") return p;
  while (i < s.size()) {
    if (s[i] != '(') return std::nullopt;
    auto j = s.find(')', i);
    if (j == std::string::npos) return std::nullopt;
    std::string body = s.substr(i + 1, j - i - 1);
    std::vector<int> pts;
    if (body.find(',') != std::string::npos || body.find(' ') != std::string::npos) {
      std::string tok;
      std::stringstream ss(body);
      while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove(tok.begin(), tok.end(), ' '), tok.end());
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) return std::nullopt;
        pts.push_back(std::stoi(tok));
      }
    } else {
      for (char c : body) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        pts.push_back(c - '0');
      }
    }
    for (int x : pts)
      if (x < 1 || static_cast<std::size_t>(x) > degree) return std::nullopt;
    std::set<int> uniq(pts.begin(), pts.end());
    if (uniq.size() != pts.size()) return std::nullopt;
    Perm c = perm_identity(degree);
    for (std::size_t k = 0; k < pts.size(); ++k)
      c[pts[k] - 1] = static_cast<std::uint8_t>(pts[(k + 1) % pts.size()] - 1);
    p = perm_mul(p, c);
    i = j + 1;
  }
  return p;
}

inline std::string perm_format(const Perm& p) {
  std::string out = "perm[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i] + 1);
  }
  return out + "]";
}

inline std::optional<Perm> perm_parse(const std::string& tok, std::size_t degree) {
  if (tok.rfind("perm[", 0) == 0 && tok.back() == ']') {
    std::vector<int> imgs;
    std::stringstream ss(tok.substr(5, tok.size() - 6));
    std::string x;
    while (std::getline(ss, x, ',')) {
      if (x.empty() || !std::all_of(x.begin(), x.end(), ::isdigit)) return std::nullopt;
      imgs.push_back(std::stoi(x));
    }
    if (imgs.size() != degree) return std::nullopt;
    try {
      return perm_from_one_line(imgs);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  return perm_from_cycles(tok, degree);
}

// ---------------------------------------------------------------------------
// FiniteModel: U a permutation group, elements stored as indices into the sorted
// element list (index 0 is the identity).

class FiniteModel {
 public:
  using Element = std::uint32_t;
  static constexpr std::size_t max_order = 1024;
  static constexpr Element none = std::numeric_limits<Element>::max();

  FiniteModel(std::size_t degree, const std::vector<Perm>& U_gens, const std::vector<Perm>& O_gens,
              const std::vector<Perm>& phi_images)
      : degree_(degree) {
    if (degree == 0 || degree > 64) raise(ErrorCode::InvalidModel, "degree must be in [1,64]");
    if (O_gens.size() != phi_images.size())
      raise(ErrorCode::InvalidModel, "phi_images must match O_gens");
    auto check_perm = [&](const Perm& p) {
      if (p.size() != degree) raise(ErrorCode::InvalidModel, "permutation of wrong degree");
    };
    for (auto& p : U_gens) check_perm(p);
    for (auto& p : O_gens) check_perm(p);
    for (auto& p : phi_images) check_perm(p);

    elems_ = closure(U_gens);
    std::sort(elems_.begin(), elems_.end(), perm_less);
    for (std::size_t i = 0; i < elems_.size(); ++i) lookup_[elems_[i]] = static_cast<Element>(i);
    const std::size_t n = elems_.size();
    mul_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) mul_[a * n + b] = lookup_.at(perm_mul(elems_[a], elems_[b]));
    inv_.resize(n);
    for (std::size_t a = 0; a < n; ++a) inv_[a] = lookup_.at(perm_inv(elems_[a]));

    std::vector<Element> og, pg;
    for (auto& p : O_gens) og.push_back(index_of(p, "O generator not in U"));
    for (auto& p : phi_images) pg.push_back(index_of(p, "phi image not in U"));

    // Extend phi over O by breadth-first search on O's generators.
    phi_.assign(n, none);
    phi_[0] = 0;
    std::vector<Element> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      Element x = queue[qi];
      for (std::size_t k = 0; k < og.size(); ++k) {
        Element y = mul(x, og[k]);
        Element py = mul(phi_[x], pg[k]);
        if (phi_[y] == none) {
          phi_[y] = py;
          queue.push_back(y);
        } else if (phi_[y] != py) {
          raise(ErrorCode::InvalidModel, "phi does not extend to a homomorphism");
        }
      }
    }
    for (Element x = 0; x < n; ++x)
      if (phi_[x] != none)
        for (Element y = 0; y < n; ++y)
          if (phi_[y] != none && phi_[mul(x, y)] != mul(phi_[x], phi_[y]))
            raise(ErrorCode::InvalidModel, "phi does not extend to a homomorphism");
    phi_inv_.assign(n, none);
    for (Element x = 0; x < n; ++x)
      if (phi_[x] != none) {
        if (phi_inv_[phi_[x]] != none) raise(ErrorCode::InvalidModel, "phi is not injective");
        phi_inv_[phi_[x]] = x;
      }
    build_cosets();
  }

  static FiniteModel from_one_line(std::size_t degree, const std::vector<std::vector<int>>& U_gens,
                                   const std::vector<std::vector<int>>& O_gens,
                                   const std::vector<std::vector<int>>& phi_images) {
    auto conv = [](const std::vector<std::vector<int>>& v) {
      std::vector<Perm> out;
      for (auto& x : v) out.push_back(perm_from_one_line(x));
      return out;
    };
    return FiniteModel(degree, conv(U_gens), conv(O_gens), conv(phi_images));
  }

  // U = S3, O = A3, phi = id.
  static FiniteModel s3_a3() {
    return from_one_line(3, {{2, 1, 3}, {2, 3, 1}}, {{2, 3, 1}}, {{2, 3, 1}});
  }

  // Copy whose phi table has one entry replaced; exists only to exercise the
  // relation checker on a broken model.
  FiniteModel with_corrupted_phi(Element omega, Element image) const {
    FiniteModel c = *this;
    c.phi_.at(omega) = image;
    return c;
  }

  std::string name() const { return "finite"; }
  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elems_.size(); }
  const Perm& perm(Element e) const { return elems_.at(e); }

  Element identity() const { return 0; }
  Element mul(Element a, Element b) const { return mul_[a * elems_.size() + b]; }
  Element inv(Element a) const { return inv_[a]; }
  bool in_O(Element a) const { return phi_[a] != none; }
  bool in_phiO(Element a) const { return phi_inv_[a] != none; }
  Element phi(Element a) const {
    if (phi_[a] == none) raise(ErrorCode::NotInDomain, "phi applied outside O");
    return phi_[a];
  }
  Element phi_inv(Element a) const {
    if (phi_inv_[a] == none) raise(ErrorCode::NotInDomain, "phi inverse applied outside phi(O)");
    return phi_inv_[a];
  }

  // u = omega * r with omega in O and r the minimal element of the right coset O u.
  std::pair<Element, Element> decompose(Element u) const { return {omega_O_[u], rep_O_[u]}; }
  std::pair<Element, Element> decompose_phi(Element u) const { return {omega_phiO_[u], rep_phiO_[u]}; }

  std::vector<Element> left_transversal_O() const { return ltrans_O_; }
  std::vector<Element> left_transversal_phiO() const { return ltrans_phiO_; }
  std::uint64_t index_O() const { return ltrans_O_.size(); }
  std::uint64_t index_phiO() const { return ltrans_phiO_.size(); }

  bool is_automorphic() const {
    for (Element x = 0; x < order(); ++x)
      if (in_O(x) != in_phiO(x)) return false;
    return true;
  }
  // Finite models never shrink: |phi(O)| = |O|.
  bool is_shrinking() const { return false; }

  std::vector<Element> elements() const {
    std::vector<Element> v(order());
    for (Element i = 0; i < order(); ++i) v[i] = i;
    return v;
  }
  std::vector<Element> O_elements() const {
    std::vector<Element> v;
    for (Element i = 0; i < order(); ++i)
      if (in_O(i)) v.push_back(i);
    return v;
  }
  std::vector<Element> right_transversal_O() const {
    std::set<Element> s(rep_O_.begin(), rep_O_.end());
    return {s.begin(), s.end()};
  }

  // phi^k(O) as a sorted set; requires phi(O) <= O.
  std::vector<Element> phi_power_image(std::size_t k) const {
    auto cur = O_elements();
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Element> next;
      for (auto x : cur) {
        if (!in_O(x)) raise(ErrorCode::RegimeMismatch, "phi(O) is not contained in O");
        next.push_back(phi(x));
      }
      std::sort(next.begin(), next.end());
      cur = std::move(next);
    }
    return cur;
  }

  std::string format(Element e) const { return perm_format(elems_.at(e)); }
  std::optional<Element> parse(const std::string& tok) const {
    auto p = perm_parse(tok, degree_);
    if (!p) return std::nullopt;
    auto it = lookup_.find(*p);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }
  Element sample(Rng& rng) const {
    return static_cast<Element>(std::uniform_int_distribution<std::size_t>(0, order() - 1)(rng));
  }

 private:
  static std::vector<Perm> closure(const std::vector<Perm>& gens) {
    std::size_t n = gens.empty() ? 0 : gens[0].size();
    std::vector<Perm> out;
    std::set<Perm> seen;
    Perm id = perm_identity(n);
    out.push_back(id);
    seen.insert(id);
    for (std::size_t i = 0; i < out.size(); ++i)
      for (const auto& g : gens) {
        Perm p = perm_mul(out[i], g);
        if (seen.insert(p).second) {
          out.push_back(p);
          if (out.size() > max_order) raise(ErrorCode::InvalidModel, "U is too large");
        }
      }
    return out;
  }

  Element index_of(const Perm& p, const char* msg) const {
    auto it = lookup_.find(p);
    if (it == lookup_.end()) raise(ErrorCode::InvalidModel, msg);
    return it->second;
  }

  void build_cosets() {
    const Element n = static_cast<Element>(order());
    auto right = [&](auto member, std::vector<Element>& rep, std::vector<Element>& omega) {
      rep.assign(n, none);
      omega.assign(n, none);
      for (Element u = 0; u < n; ++u) {
        if (rep[u] != none) continue;
        // Right coset H u; elements are visited in order so u is its minimum.
        for (Element h = 0; h < n; ++h)
          if ((this->*member)(h)) {
            Element x = mul(h, u);
            rep[x] = u;
            omega[x] = h;
          }
      }
    };
    auto left = [&](auto member) {
      std::vector<Element> reps;
      std::vector<bool> done(n, false);
      for (Element u = 0; u < n; ++u) {
        if (done[u]) continue;
        reps.push_back(u);
        for (Element h = 0; h < n; ++h)
          if ((this->*member)(h)) done[mul(u, h)] = true;
      }
      return reps;
    };
    right(&FiniteModel::in_O, rep_O_, omega_O_);
    right(&FiniteModel::in_phiO, rep_phiO_, omega_phiO_);
    ltrans_O_ = left(&FiniteModel::in_O);
    ltrans_phiO_ = left(&FiniteModel::in_phiO);
  }

  std::size_t degree_;
  std::vector<Perm> elems_;
  std::map<Perm, Element> lookup_;
  std::vector<Element> mul_, inv_, phi_, phi_inv_;
  std::vector<Element> rep_O_, omega_O_, rep_phiO_, omega_phiO_;
  std::vector<Element> ltrans_O_, ltrans_phiO_;
};

// ---------------------------------------------------------------------------
// ShiftModel: U = Z, O = U, phi(u) = m u.

// Element u / m^k of Z[1/m], stored as the reduced pair (k, u).
struct NElem {
  std::int64_t k = 0;
  std::int64_t u = 0;
  auto operator<=>(const NElem&) const = default;
};

class ShiftModel {
 public:
  using Element = std::int64_t;

  explicit ShiftModel(std::int64_t m) : m_(m) {
    if (m < 2) raise(ErrorCode::InvalidModel, "shift factor must be >= 2");
  }

  std::string name() const { return "shift"; }
  std::int64_t m() const { return m_; }

  Element identity() const { return 0; }
  Element mul(Element a, Element b) const { return checked::add(a, b); }
  Element inv(Element a) const { return checked::sub(0, a); }
  bool in_O(Element) const { return true; }
  bool in_phiO(Element a) const { return checked::mod(a, m_) == 0; }
  Element phi(Element a) const { return checked::mul(m_, a); }
  Element phi_inv(Element a) const {
    if (!in_phiO(a)) raise(ErrorCode::NotInDomain, std::to_string(a) + " is not in phi(O)");
    return a / m_;
  }
  std::pair<Element, Element> decompose(Element u) const { return {u, 0}; }
  std::pair<Element, Element> decompose_phi(Element u) const {
    Element r = checked::mod(u, m_);
    return {u - r, r};
  }
  std::vector<Element> left_transversal_O() const { return {0}; }
  std::vector<Element> left_transversal_phiO() const {
    std::vector<Element> v;
    for (Element r = 0; r < m_; ++r) v.push_back(r);
    return v;
  }
  std::uint64_t index_O() const { return 1; }
  std::uint64_t index_phiO() const { return static_cast<std::uint64_t>(m_); }
  bool is_automorphic() const { return false; }
  bool is_shrinking() const { return true; }

  // Largest j with u in m^j Z; nullopt stands for infinity (u = 0).
  std::optional<std::int64_t> phi_depth(Element u) const {
    if (u == 0) return std::nullopt;
    std::int64_t j = 0;
    while (u % m_ == 0) {
      u /= m_;
      ++j;
    }
    return j;
  }

  NElem reduce_N(NElem x) const {
    if (x.k < 0) raise(ErrorCode::NotInDomain, "negative shift exponent");
    if (x.u == 0) return {0, 0};
    while (x.k > 0 && x.u % m_ == 0) {
      x.u /= m_;
      --x.k;
    }
    return x;
  }

  // Arithmetic in Z[1/m].
  NElem n_add(NElem a, NElem b) const {
    std::int64_t k = std::max(a.k, b.k);
    std::int64_t ua = checked::mul(a.u, checked::pow(m_, k - a.k));
    std::int64_t ub = checked::mul(b.u, checked::pow(m_, k - b.k));
    return reduce_N({k, checked::add(ua, ub)});
  }
  NElem n_neg(NElem a) const { return {a.k, checked::sub(0, a.u)}; }
  // a * m^e for any integer e.
  NElem n_shift(NElem a, std::int64_t e) const {
    if (e >= 0) {
      std::int64_t d = std::min(e, a.k);
      a.k -= d;
      a.u = checked::mul(a.u, checked::pow(m_, e - d));
      return reduce_N(a);
    }
    return reduce_N({checked::add(a.k, -e), a.u});
  }
  // Least non-negative representative of a modulo m^e Z, for any integer e.
  NElem n_mod_pow(NElem a, std::int64_t e) const {
    std::int64_t scale = checked::add(e, a.k);
    if (scale <= 0) return {0, 0};
    return reduce_N({a.k, checked::mod(a.u, checked::pow(m_, scale))});
  }
  bool n_is_integer(NElem a) const { return a.k == 0; }
  std::string n_format(NElem a) const {
    if (a.k == 0) return std::to_string(a.u);
    return std::to_string(a.u) + "/" + std::to_string(m_) + "^" + std::to_string(a.k);
  }

  std::string format(Element e) const { return std::to_string(e); }
  std::optional<Element> parse(const std::string& tok) const {
    if (tok.empty()) return std::nullopt;
    std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size() || !std::all_of(tok.begin() + i, tok.end(), ::isdigit)) return std::nullopt;
    try {
      return std::stoll(tok);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  Element sample(Rng& rng) const { return std::uniform_int_distribution<Element>(-20, 20)(rng); }

 private:
  std::int64_t m_;
};

// ---------------------------------------------------------------------------
// TrivialModel: U = {1}; A_Gamma(phi) is the plain RAAG.

class TrivialModel {
 public:
  using Element = std::uint32_t;

  std::string name() const { return "trivial"; }
  Element identity() const { return 0; }
  Element mul(Element, Element) const { return 0; }
  Element inv(Element) const { return 0; }
  bool in_O(Element) const { return true; }
  bool in_phiO(Element) const { return true; }
  Element phi(Element) const { return 0; }
  Element phi_inv(Element) const { return 0; }
  std::pair<Element, Element> decompose(Element) const { return {0, 0}; }
  std::pair<Element, Element> decompose_phi(Element) const { return {0, 0}; }
  std::vector<Element> left_transversal_O() const { return {0}; }
  std::vector<Element> left_transversal_phiO() const { return {0}; }
  std::uint64_t index_O() const { return 1; }
  std::uint64_t index_phiO() const { return 1; }
  bool is_automorphic() const { return true; }
  bool is_shrinking() const { return false; }
  std::vector<Element> elements() const { return {0}; }
  std::vector<Element> O_elements() const { return {0}; }
  std::vector<Element> phi_power_image(std::size_t) const { return {0}; }
  std::size_t order() const { return 1; }
  std::string format(Element) const { return "e"; }
  std::optional<Element> parse(const std::string& tok) const {
    if (tok == "e" || tok == "1") return 0;
    return std::nullopt;
  }
  Element sample(Rng&) const { return 0; }
};

static_assert(BaseModel<FiniteModel>);
static_assert(BaseModel<ShiftModel>);
static_assert(BaseModel<TrivialModel>);

}  // namespace topraag
