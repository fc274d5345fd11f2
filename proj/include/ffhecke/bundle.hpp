#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ffhecke/error.hpp"
#include "ffhecke/rational.hpp"

namespace ffhecke {

// O(slope)^{rank/den}: slope * rank must be integral.
struct IsoclinicPiece {
  Rational slope;
  std::int64_t rank = 0;

  std::int64_t degree() const { return (slope * Rational(rank)).num(); }
  friend bool operator==(const IsoclinicPiece&, const IsoclinicPiece&) = default;
};

// Vector bundle on the curve in HN form: slopes strictly decreasing.
class Bundle {
 public:
  static Bundle canonicalize(std::vector<IsoclinicPiece> pieces) {
    if (pieces.empty()) throw Error(ErrorCode::EmptyBundle, "bundle needs at least one piece");
    for (const auto& p : pieces) {
      if (p.rank < 1) throw Error(ErrorCode::InvalidInput, "piece rank must be positive");
      if (!(p.slope * Rational(p.rank)).is_integer())
        throw Error(ErrorCode::NonIntegralPiece, "slope " + p.slope.str() + " times rank " + std::to_string(p.rank));
    }
    std::stable_sort(pieces.begin(), pieces.end(),
                     [](const IsoclinicPiece& a, const IsoclinicPiece& b) { return a.slope > b.slope; });
    std::vector<IsoclinicPiece> merged;
    for (const auto& p : pieces) {
      if (!merged.empty() && merged.back().slope == p.slope)
        merged.back().rank = checked::add(merged.back().rank, p.rank);
      else
        merged.push_back(p);
    }
    return Bundle(std::move(merged));
  }

  static Bundle trivial(std::int64_t n) { return canonicalize({{Rational(0), n}}); }
  static Bundle line(std::int64_t d) { return canonicalize({{Rational(d), 1}}); }
  static Bundle stable(std::int64_t d, std::int64_t h) {
    Rational s(d, h);
    return canonicalize({{s, s.den()}});
  }

  const std::vector<IsoclinicPiece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  std::int64_t rank() const {
    std::int64_t r = 0;
    for (const auto& p : pieces_) r = checked::add(r, p.rank);
    return r;
  }

  friend bool operator==(const Bundle&, const Bundle&) = default;

 private:
  explicit Bundle(std::vector<IsoclinicPiece> p) : pieces_(std::move(p)) {}
  std::vector<IsoclinicPiece> pieces_;
};

inline std::int64_t kappa(const Bundle& b) {
  std::int64_t d = 0;
  for (const auto& p : b.pieces()) d = checked::add(d, p.degree());
  return d;
}

inline std::vector<Rational> newton_point(const Bundle& b) {
  std::vector<Rational> v;
  for (const auto& p : b.pieces()) v.insert(v.end(), static_cast<std::size_t>(p.rank), p.slope);
  return v;
}

inline Rational nu_max(const Bundle& b) { return b.pieces().front().slope; }
inline Rational nu_min(const Bundle& b) { return b.pieces().back().slope; }
inline std::int64_t rk_min(const Bundle& b) { return b.pieces().back().rank; }
inline std::int64_t deg_min(const Bundle& b) { return b.pieces().back().degree(); }
inline bool is_semistable(const Bundle& b) { return b.size() == 1; }

struct Infinity {
  friend bool operator==(Infinity, Infinity) { return true; }
};
using ExtendedSlope = std::variant<Rational, Infinity>;

// E' in E = E' + E^min; empty when E is semistable.
inline std::optional<Bundle> upper_part(const Bundle& b) {
  if (b.size() == 1) return std::nullopt;
  std::vector<IsoclinicPiece> p(b.pieces().begin(), b.pieces().end() - 1);
  return Bundle::canonicalize(std::move(p));
}

inline ExtendedSlope nu_min(const std::optional<Bundle>& b) {
  if (!b) return Infinity{};
  return nu_min(*b);
}

// x >= r, with the infinite slope above every rational.
inline bool at_least(const ExtendedSlope& x, const Rational& r) {
  if (std::holds_alternative<Infinity>(x)) return true;
  return std::get<Rational>(x) >= r;
}

inline Bundle dual(const Bundle& b) {
  std::vector<IsoclinicPiece> p;
  for (const auto& q : b.pieces()) p.push_back({-q.slope, q.rank});
  return Bundle::canonicalize(std::move(p));
}

inline Bundle twist(const Bundle& b, std::int64_t k) {
  std::vector<IsoclinicPiece> p;
  for (const auto& q : b.pieces()) p.push_back({q.slope + Rational(k), q.rank});
  return Bundle::canonicalize(std::move(p));
}

inline Bundle direct_sum(const Bundle& a, const Bundle& b) {
  std::vector<IsoclinicPiece> p(a.pieces());
  p.insert(p.end(), b.pieces().begin(), b.pieces().end());
  return Bundle::canonicalize(std::move(p));
}

// sum_{i<j} (v_i - v_j) on the vector as given.
inline Rational two_rho_pairing(const std::vector<Rational>& v) {
  const auto n = static_cast<std::int64_t>(v.size());
  Rational s(0);
  for (std::int64_t i = 0; i < n; ++i) s += Rational(n - 1 - 2 * i) * v[static_cast<std::size_t>(i)];
  return s;
}

inline bool dominance_leq(const std::vector<Rational>& u, const std::vector<Rational>& v) {
  if (u.size() != v.size()) throw Error(ErrorCode::LengthMismatch, "dominance_leq on vectors of different length");
  Rational su(0), sv(0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    su += u[i];
    sv += v[i];
    if (su > sv) return false;
  }
  return su == sv;
}

// HN(k) for k = 0..n.
inline std::vector<Rational> hn_values(const Bundle& b) {
  std::vector<Rational> h{Rational(0)};
  for (const auto& p : b.pieces())
    for (std::int64_t i = 0; i < p.rank; ++i) h.push_back(h.back() + p.slope);
  return h;
}

struct Breakpoint {
  std::int64_t x = 0;
  Rational y;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

class NewtonPolygon {
 public:
  explicit NewtonPolygon(const Bundle& b) {
    pts_.push_back({0, Rational(0)});
    for (const auto& p : b.pieces())
      pts_.push_back({checked::add(pts_.back().x, p.rank), pts_.back().y + Rational(p.degree())});
  }

  const std::vector<Breakpoint>& breakpoints() const& { return pts_; }
  std::vector<Breakpoint> breakpoints() && { return std::move(pts_); }

  Rational value_at(std::int64_t k) const {
    if (k < 0 || k > pts_.back().x) throw Error(ErrorCode::InvalidInput, "polygon abscissa out of range");
    for (std::size_t i = 1; i < pts_.size(); ++i) {
      if (k <= pts_[i].x) {
        const auto& a = pts_[i - 1];
        const auto& c = pts_[i];
        return a.y + (c.y - a.y) * Rational(k - a.x, c.x - a.x);
      }
    }
    return pts_.back().y;
  }

 private:
  std::vector<Breakpoint> pts_;
};

// Lexicographic comparison of Newton points; equal-rank bundles only.
inline bool newton_greater(const Bundle& a, const Bundle& b) {
  auto u = newton_point(a), v = newton_point(b);
  return std::lexicographical_compare(v.begin(), v.end(), u.begin(), u.end());
}

inline bool bundle_less(const Bundle& a, const Bundle& b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  return newton_greater(a, b);
}

// Canonical listing order: most unstable polygon first.
inline void sort_canonical(std::vector<Bundle>& v) { std::sort(v.begin(), v.end(), bundle_less); }

namespace detail {

inline void enumerate_rec(std::int64_t rank_left, std::int64_t deg_left, const Rational& lo, const Rational& hi,
                          bool strict, std::vector<IsoclinicPiece>& acc, std::vector<Bundle>& out) {
  if (rank_left == 0) {
    if (deg_left == 0) out.push_back(Bundle::canonicalize(acc));
    return;
  }
  for (std::int64_t r = 1; r <= rank_left; ++r) {
    Rational top = hi * Rational(r);
    std::int64_t dmax = top.floor();
    if (strict && top.is_integer()) --dmax;
    std::int64_t dmin = (lo * Rational(r)).ceil();
    for (std::int64_t d = dmax; d >= dmin; --d) {
      Rational s(d, r);
      std::int64_t rest_rank = rank_left - r;
      std::int64_t rest_deg = checked::sub(deg_left, d);
      if (rest_rank == 0) {
        if (rest_deg != 0) continue;
      } else {
        Rational rest_lo = lo * Rational(rest_rank);
        Rational rest_hi = s * Rational(rest_rank);
        if (Rational(rest_deg) < rest_lo || Rational(rest_deg) >= rest_hi) continue;
      }
      acc.push_back({s, r});
      enumerate_rec(rest_rank, rest_deg, lo, s, true, acc, out);
      acc.pop_back();
    }
  }
}

}  // namespace detail

// All bundles of rank n and degree d with slopes in [lo, hi].
inline std::vector<Bundle> enumerate_bundles(std::int64_t n, std::int64_t d, const Rational& lo, const Rational& hi) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "enumerate_bundles needs n >= 1");
  std::vector<Bundle> out;
  if (lo > hi) return out;
  std::vector<IsoclinicPiece> acc;
  detail::enumerate_rec(n, d, lo, hi, false, acc, out);
  sort_canonical(out);
  return out;
}

inline std::string to_string(const Bundle& b) {
  std::string s;
  for (const auto& p : b.pieces()) {
    if (!s.empty()) s += "+";
    s += "O(" + p.slope.str() + ")";
    std::int64_t copies = p.rank / p.slope.den();
    if (copies != 1) s += "^" + std::to_string(copies);
  }
  return s;
}

}  // namespace ffhecke
