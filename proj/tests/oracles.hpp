#pragma once

// Brute-force reference implementations. They share no code with the library beyond
// the Bundle value type used to compare answers.

#include <algorithm>
#include <cstdlib>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "ffhecke/bundle.hpp"

namespace oracle {

struct Frac {
  std::int64_t p = 0;
  std::int64_t q = 1;

  Frac() = default;
  Frac(std::int64_t a, std::int64_t b = 1) : p(a), q(b) {
    if (q < 0) p = -p, q = -q;
    auto g = std::gcd(p < 0 ? -p : p, q);
    if (g > 1) p /= g, q /= g;
  }
  friend Frac operator+(Frac a, Frac b) { return {a.p * b.q + b.p * a.q, a.q * b.q}; }
  friend Frac operator-(Frac a, Frac b) { return {a.p * b.q - b.p * a.q, a.q * b.q}; }
  friend bool operator<(Frac a, Frac b) { return a.p * b.q < b.p * a.q; }
  friend bool operator<=(Frac a, Frac b) { return !(b < a); }
  friend bool operator==(Frac a, Frac b) { return a.p == b.p && a.q == b.q; }
};

inline Frac of(const ffhecke::Rational& r) { return {r.num(), r.den()}; }

// Expanded slope vector, one entry per unit of rank, descending.
inline std::vector<Frac> slopes(const ffhecke::Bundle& b) {
  std::vector<Frac> v;
  for (const auto& p : b.pieces())
    for (std::int64_t i = 0; i < p.rank; ++i) v.push_back(of(p.slope));
  std::sort(v.begin(), v.end(), [](Frac a, Frac c) { return c < a; });
  return v;
}

inline std::vector<Frac> partial_sums(const std::vector<Frac>& v) {
  std::vector<Frac> s{Frac(0)};
  for (auto x : v) s.push_back(s.back() + x);
  return s;
}

inline Frac two_rho(const std::vector<Frac>& v) {
  Frac s(0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) s = s + (v[i] - v[j]);
  return s;
}

inline bool dominated(const std::vector<Frac>& u, const std::vector<Frac>& v) {
  auto su = partial_sums(u), sv = partial_sums(v);
  if (!(su.back() == sv.back())) return false;
  for (std::size_t k = 0; k < su.size(); ++k)
    if (sv[k] < su[k]) return false;
  return true;
}

// Std modification test straight from the slope vectors.
inline bool std_mod(const ffhecke::Bundle& b, const ffhecke::Bundle& b2) {
  auto u = slopes(b), v = slopes(b2);
  if (u.size() != v.size()) return false;
  if (!(partial_sums(v).back() == partial_sums(u).back() + Frac(1))) return false;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (v[i] < u[i] || u[i] + Frac(1) < v[i]) return false;
  return true;
}

// Bundles of rank n and degree d with all slopes in [lo, hi], found by trying every set of
// integer breakpoints and keeping the strictly concave ones.
inline std::set<std::vector<std::pair<std::int64_t, std::int64_t>>> polygons(std::int64_t n, std::int64_t d, Frac lo,
                                                                           Frac hi) {
  std::set<std::vector<std::pair<std::int64_t, std::int64_t>>> out;
  std::vector<std::pair<std::int64_t, std::int64_t>> pts{{0, 0}};
  auto floor_div = [](std::int64_t a, std::int64_t b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  auto rec = [&](auto&& self) -> void {
    auto [x, y] = pts.back();
    if (x == n) {
      if (y == d) out.insert(pts);
      return;
    }
    for (std::int64_t x2 = x + 1; x2 <= n; ++x2) {
      std::int64_t r = x2 - x;
      std::int64_t ylo = -floor_div(-lo.p * r, lo.q), yhi = floor_div(hi.p * r, hi.q);
      for (std::int64_t y2 = y + ylo; y2 <= y + yhi; ++y2) {
        Frac s(y2 - y, r);
        if (pts.size() >= 2) {
          auto [px, py] = pts[pts.size() - 2];
          if (!(s < Frac(y - py, x - px))) continue;
        }
        pts.push_back({x2, y2});
        self(self);
        pts.pop_back();
      }
    }
  };
  rec(rec);
  return out;
}

inline std::vector<std::pair<std::int64_t, std::int64_t>> vertices(const ffhecke::Bundle& b) {
  std::vector<std::pair<std::int64_t, std::int64_t>> v{{0, 0}};
  for (const auto& p : b.pieces()) v.push_back({v.back().first + p.rank, v.back().second + p.degree()});
  return v;
}

// All chi with the given slope multiset, by searching the box of plausible degrees.
inline std::vector<std::vector<std::int64_t>> characters_by_search(const std::vector<std::int64_t>& parts,
                                                                   const ffhecke::Bundle& b) {
  auto want = slopes(b);
  // |chi_i| <= |slope| * n_i for every slope that occurs.
  std::int64_t bound = 0, widest = *std::max_element(parts.begin(), parts.end());
  for (const auto& p : b.pieces()) bound = std::max(bound, (std::abs(p.slope.num()) / p.slope.den() + 1) * widest);
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur;
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == parts.size()) {
      std::vector<Frac> got;
      for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::int64_t k = 0; k < parts[i]; ++k) got.push_back(Frac(cur[i], parts[i]));
      std::sort(got.begin(), got.end(), [](Frac a, Frac c) { return c < a; });
      if (got == want) out.push_back(cur);
      return;
    }
    for (std::int64_t a = -bound; a <= bound; ++a) {
      cur.push_back(a);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

// Smallest k >= 0 with chi + k * parts >= 0, by counting up.
inline std::int64_t det_power(const std::vector<std::int64_t>& parts, const std::vector<std::int64_t>& chi) {
  for (std::int64_t k = 0;; ++k) {
    bool ok = true;
    for (std::size_t i = 0; i < parts.size(); ++i) ok = ok && chi[i] + k * parts[i] >= 0;
    if (ok) return k;
  }
}

}  // namespace oracle
