#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "ffhecke/bundle.hpp"

namespace ffhecke {

// L = GL_{n_1} x ... x GL_{n_r}; part order is significant.
class LeviDatum {
 public:
  LeviDatum() = default;
  explicit LeviDatum(std::vector<std::int64_t> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw Error(ErrorCode::InvalidInput, "Levi datum needs at least one part");
    for (auto p : parts_)
      if (p < 1) throw Error(ErrorCode::InvalidInput, "Levi parts must be positive");
  }

  const std::vector<std::int64_t>& parts() const { return parts_; }
  std::size_t r() const { return parts_.size(); }
  std::int64_t part(std::size_t i) const { return parts_.at(i); }
  std::int64_t n() const {
    std::int64_t s = 0;
    for (auto p : parts_) s = checked::add(s, p);
    return s;
  }

  friend bool operator==(const LeviDatum&, const LeviDatum&) = default;

 private:
  std::vector<std::int64_t> parts_;
};

// Element of X^*(Z(L^)) = Z^r, written additively.
class Character {
 public:
  Character() = default;
  explicit Character(std::vector<std::int64_t> v) : v_(std::move(v)) {}

  static Character zero(std::size_t r) { return Character(std::vector<std::int64_t>(r, 0)); }
  static Character unit(std::size_t r, std::size_t c) {
    auto z = zero(r);
    z.v_.at(c) = 1;
    return z;
  }
  static Character det(const LeviDatum& L) { return Character(L.parts()); }

  const std::vector<std::int64_t>& values() const { return v_; }
  std::size_t size() const { return v_.size(); }
  std::int64_t operator[](std::size_t i) const { return v_.at(i); }

  friend Character operator+(const Character& a, const Character& b) {
    same_length(a, b);
    Character c(a.v_);
    for (std::size_t i = 0; i < c.v_.size(); ++i) c.v_[i] = checked::add(c.v_[i], b.v_[i]);
    return c;
  }
  Character operator-() const {
    Character c(v_);
    for (auto& x : c.v_) x = checked::neg(x);
    return c;
  }
  friend Character operator-(const Character& a, const Character& b) { return a + (-b); }
  Character scaled(std::int64_t k) const {
    Character c(v_);
    for (auto& x : c.v_) x = checked::mul(x, k);
    return c;
  }

  // Componentwise order; chi >= 0 means every entry non-negative.
  bool dominates(const Character& o) const {
    same_length(*this, o);
    for (std::size_t i = 0; i < v_.size(); ++i)
      if (v_[i] < o.v_[i]) return false;
    return true;
  }
  bool is_nonnegative() const { return dominates(zero(v_.size())); }

  std::int64_t total() const {
    std::int64_t s = 0;
    for (auto x : v_) s = checked::add(s, x);
    return s;
  }

  friend bool operator==(const Character&, const Character&) = default;
  friend auto operator<=>(const Character& a, const Character& b) { return a.v_ <=> b.v_; }

  static void same_length(const Character& a, const Character& b) {
    if (a.v_.size() != b.v_.size()) throw Error(ErrorCode::LengthMismatch, "characters of different length");
  }

 private:
  std::vector<std::int64_t> v_;
};

inline void require_length(const LeviDatum& L, const Character& chi) {
  if (chi.size() != L.r()) throw Error(ErrorCode::LengthMismatch, "character length does not match the Levi");
}

// One-line notation, 1-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> one_line) : w_(std::move(one_line)) {
    std::vector<std::size_t> s = w_;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] != i + 1) throw Error(ErrorCode::InvalidInput, "not a permutation");
  }
  static Permutation identity(std::size_t r) {
    std::vector<std::size_t> v(r);
    std::iota(v.begin(), v.end(), 1);
    return Permutation(v);
  }
  const std::vector<std::size_t>& one_line() const { return w_; }
  std::size_t operator()(std::size_t i) const { return w_.at(i - 1); }
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> w_;
};

inline Rational factor_slope(const LeviDatum& L, const Character& chi, std::size_t i) {
  return Rational(chi[i], L.part(i));
}

struct BOfChi {
  Bundle bundle;
  Permutation w;  // w(i) = factor with the i-th smallest slope; ties keep index order
};

inline BOfChi b_of_chi(const LeviDatum& L, const Character& chi) {
  require_length(L, chi);
  std::vector<IsoclinicPiece> pieces;
  std::vector<std::size_t> order(L.r());
  for (std::size_t i = 0; i < L.r(); ++i) {
    pieces.push_back({factor_slope(L, chi, i), L.part(i)});
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return factor_slope(L, chi, a) < factor_slope(L, chi, b);
  });
  for (auto& x : order) ++x;
  return {Bundle::canonicalize(std::move(pieces)), Permutation(std::move(order))};
}

namespace detail {

inline void match_parts(const LeviDatum& L, const std::vector<IsoclinicPiece>& pieces, std::size_t i,
                        std::vector<std::int64_t>& room, std::vector<std::int64_t>& chi,
                        std::vector<Character>& out) {
  if (i == L.r()) {
    for (auto x : room)
      if (x != 0) return;
    out.emplace_back(chi);
    return;
  }
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    std::int64_t ni = L.part(i);
    if (room[j] < ni || ni % pieces[j].slope.den() != 0) continue;
    room[j] -= ni;
    chi[i] = (pieces[j].slope * Rational(ni)).num();
    match_parts(L, pieces, i + 1, room, chi, out);
    room[j] += ni;
  }
}

}  // namespace detail

// Every chi with b_of_chi(L, chi).bundle == b, in lexicographic order.
inline std::vector<Character> characters_of(const LeviDatum& L, const Bundle& b) {
  std::vector<Character> out;
  if (b.rank() != L.n()) return out;
  std::vector<std::int64_t> room;
  for (const auto& p : b.pieces()) room.push_back(p.rank);
  std::vector<std::int64_t> chi(L.r(), 0);
  detail::match_parts(L, b.pieces(), 0, room, chi, out);
  std::sort(out.begin(), out.end());
  return out;
}

// Representative modulo permutations of equal parts: values sorted descending inside
// each class of equal n_i.
inline Character symmetry_representative(const LeviDatum& L, const Character& chi) {
  std::vector<std::int64_t> v = chi.values();
  std::set<std::int64_t> sizes(L.parts().begin(), L.parts().end());
  for (auto s : sizes) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < L.r(); ++i)
      if (L.part(i) == s) idx.push_back(i);
    std::vector<std::int64_t> vals;
    for (auto i : idx) vals.push_back(v[i]);
    std::sort(vals.rbegin(), vals.rend());
    for (std::size_t k = 0; k < idx.size(); ++k) v[idx[k]] = vals[k];
  }
  return Character(v);
}

// Characters realizing b up to the symmetry of equal parts; empty when b is not in B(G)_L.
inline std::vector<Character> in_BGL(const LeviDatum& L, const Bundle& b) {
  std::set<Character> reps;
  for (const auto& chi : characters_of(L, b)) reps.insert(symmetry_representative(L, chi));
  return {reps.begin(), reps.end()};
}

inline std::string format_ints(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace ffhecke
