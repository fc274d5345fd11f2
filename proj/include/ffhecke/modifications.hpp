#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffhecke/bundle.hpp"

namespace ffhecke {

enum class ModType { Std, StdDual, Det };

// Margins HN_{b'}(k) - HN_b(k) and HN_b(k) + 1 - HN_{b'}(k) for k = 1..n.
struct SandwichEvidence {
  std::vector<std::int64_t> k;
  std::vector<Rational> lower_margin;
  std::vector<Rational> upper_margin;
};

inline std::vector<Rational> mu_std(std::int64_t n) {
  std::vector<Rational> v(static_cast<std::size_t>(n), Rational(0));
  if (n > 0) v[0] = Rational(1);
  return v;
}

inline std::optional<SandwichEvidence> std_sandwich(const Bundle& b, const Bundle& b2) {
  if (b.rank() != b2.rank()) throw Error(ErrorCode::RankMismatch, "modification between bundles of different rank");
  if (kappa(b2) != checked::add(kappa(b), 1)) return std::nullopt;
  // Slopewise bounds: an equal-rank subsheaf is slopewise dominated, and b' sits inside b(1).
  auto v = newton_point(b);
  auto v2 = newton_point(b2);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v2[i] < v[i] || v2[i] > v[i] + Rational(1)) return std::nullopt;
  auto h = hn_values(b);
  auto h2 = hn_values(b2);
  SandwichEvidence ev;
  for (std::size_t k = 1; k < h.size(); ++k) {
    Rational lower = h2[k] - h[k];
    Rational upper = h[k] + Rational(1) - h2[k];
    if (lower < Rational(0) || upper < Rational(0)) return std::nullopt;
    ev.k.push_back(static_cast<std::int64_t>(k));
    ev.lower_margin.push_back(lower);
    ev.upper_margin.push_back(upper);
  }
  return ev;
}

// For Std the criterion is the slopewise sandwich, which implies the polygon sandwich. It is
// necessary for a modification; sufficiency for non-semistable sources is a modelling assumption.
inline bool exists_mod(const Bundle& b, const Bundle& b2, ModType mu, SandwichEvidence* evidence = nullptr) {
  if (b.rank() != b2.rank()) throw Error(ErrorCode::RankMismatch, "modification between bundles of different rank");
  switch (mu) {
    case ModType::Det:
      return b2 == twist(b, 1);
    case ModType::StdDual: {
      auto ev = std_sandwich(dual(b), dual(b2));
      if (ev && evidence) *evidence = *ev;
      return ev.has_value();
    }
    case ModType::Std:
    default: {
      auto ev = std_sandwich(b, b2);
      if (ev && evidence) *evidence = *ev;
      return ev.has_value();
    }
  }
}

struct SlopeWindow {
  Rational lo;
  Rational hi;
};

// Monotonicity gives nu_min(b') >= nu_min(b); the k = 1 sandwich bound gives nu_max(b') <= nu_max(b) + 1.
inline SlopeWindow modification_window(const Bundle& b) {
  Rational hi = nu_max(b) + Rational(1);
  if (hi < Rational(1)) hi = Rational(1);
  return {nu_min(b), hi};
}

inline std::vector<Bundle> reach_over(const Bundle& b) {
  auto w = modification_window(b);
  std::vector<Bundle> out;
  for (auto& c : enumerate_bundles(b.rank(), checked::add(kappa(b), 1), w.lo, w.hi))
    if (std_sandwich(b, c)) out.push_back(std::move(c));
  return out;
}

// Targets from a semistable source: nu_{b'} <= (nu_b + mu_std)^dom.
inline std::vector<Bundle> basic_reach_exact(const Bundle& b) {
  if (!is_semistable(b)) throw Error(ErrorCode::NotSemistable, "basic_reach_exact needs a semistable source");
  Rational lambda = nu_min(b);
  auto bound = newton_point(b);
  bound[0] += Rational(1);
  std::vector<Bundle> out;
  for (auto& c : enumerate_bundles(b.rank(), checked::add(kappa(b), 1), lambda, lambda + Rational(1)))
    if (dominance_leq(newton_point(c), bound)) out.push_back(std::move(c));
  return out;
}

enum class ReductionKind { HN, OmegaHN };

inline const char* to_string(ReductionKind k) { return k == ReductionKind::HN ? "HN" : "OmegaHN"; }

struct ReductionDatum {
  ReductionKind kind;
  std::int64_t m1;
  std::int64_t m2;
  std::pair<Bundle, Bundle> theta;
  std::pair<Bundle, Bundle> theta_prime;

  // 1 when mu_std sits on GL_{m1}, 2 when it sits on GL_{m2}.
  int mu_factor() const { return kind == ReductionKind::HN ? 1 : 2; }
  friend bool operator==(const ReductionDatum&, const ReductionDatum&) = default;
};

// The unwound conditions of the reducibility definition; empty string when they hold.
inline std::string datum_violation(const ReductionDatum& d) {
  const auto& [t1, t2] = d.theta;
  const auto& [s1, s2] = d.theta_prime;
  if (d.m1 < 1 || d.m2 < 1) return "block sizes must be positive";
  if (t1.rank() != d.m1 || s1.rank() != d.m1 || t2.rank() != d.m2 || s2.rank() != d.m2) return "block ranks";
  if (d.kind == ReductionKind::HN) {
    if (!(t2 == s2)) return "theta_2 != theta'_2";
    if (kappa(s1) != kappa(t1) + 1) return "kappa(theta'_1) != kappa(theta_1) + 1";
    if (!(nu_max(s2) < nu_min(s1))) return "nu_max(theta'_2) < nu_min(theta'_1) fails";
    if (!(nu_max(t2) <= nu_min(t1))) return "nu_max(theta_2) <= nu_min(theta_1) fails";
  } else {
    if (!(t1 == s1)) return "theta_1 != theta'_1";
    if (kappa(s2) != kappa(t2) + 1) return "kappa(theta'_2) != kappa(theta_2) + 1";
    if (!(nu_max(t2) < nu_min(t1))) return "nu_max(theta_2) < nu_min(theta_1) fails";
    if (!(nu_max(s2) <= nu_min(s1))) return "nu_max(theta'_2) <= nu_min(theta'_1) fails";
  }
  return {};
}

inline std::string datum_violation(const ReductionDatum& d, const Bundle& b, const Bundle& b2) {
  auto v = datum_violation(d);
  if (!v.empty()) return v;
  if (!(direct_sum(d.theta.first, d.theta.second) == b)) return "theta does not sum to the source";
  if (!(direct_sum(d.theta_prime.first, d.theta_prime.second) == b2)) return "theta' does not sum to the target";
  return {};
}

namespace detail {

// b minus `rank` units taken from the piece of slope s; nullopt when nothing remains.
inline std::optional<Bundle> remove_part(const Bundle& b, const Rational& s, std::int64_t rank) {
  std::vector<IsoclinicPiece> rest;
  for (const auto& p : b.pieces()) {
    if (p.slope == s) {
      if (p.rank < rank) throw Error(ErrorCode::InvalidInput, "removing more than the piece holds");
      if (p.rank > rank) rest.push_back({p.slope, p.rank - rank});
    } else {
      rest.push_back(p);
    }
  }
  if (rest.empty()) return std::nullopt;
  return Bundle::canonicalize(std::move(rest));
}

}  // namespace detail

inline std::optional<ReductionDatum> classify_reducibility(const Bundle& b, const Bundle& b2) {
  if (!exists_mod(b, b2, ModType::Std)) throw Error(ErrorCode::NoModification, to_string(b) + " -> " + to_string(b2));
  std::optional<ReductionDatum> d;
  if (nu_min(b) == nu_min(b2)) {
    Rational lambda = nu_min(b);
    std::int64_t r2 = rk_min(b2);
    Bundle shared = Bundle::canonicalize({{lambda, r2}});
    auto t1 = detail::remove_part(b, lambda, r2);
    auto s1 = detail::remove_part(b2, lambda, r2);
    if (!t1 || !s1) throw Error(ErrorCode::CoherenceFailure, "degenerate HN split");
    d = ReductionDatum{ReductionKind::HN, b.rank() - r2, r2, {*t1, shared}, {*s1, shared}};
  } else if (nu_max(b) == nu_max(b2)) {
    Rational top = nu_max(b);
    std::int64_t r1 = b.pieces().front().rank;
    Bundle shared = Bundle::canonicalize({{top, r1}});
    auto t2 = detail::remove_part(b, top, r1);
    auto s2 = detail::remove_part(b2, top, r1);
    if (!t2 || !s2) throw Error(ErrorCode::CoherenceFailure, "degenerate omega-HN split");
    d = ReductionDatum{ReductionKind::OmegaHN, r1, b.rank() - r1, {shared, *t2}, {shared, *s2}};
  }
  if (d) {
    auto v = datum_violation(*d, b, b2);
    if (!v.empty()) throw Error(ErrorCode::CoherenceFailure, "constructed datum violates: " + v);
  }
  return d;
}

namespace detail {

// Every direct summand X of b with 0 < rank X < rank b, paired with its complement.
inline std::vector<std::pair<Bundle, Bundle>> proper_summands(const Bundle& b) {
  std::vector<std::pair<Bundle, Bundle>> out;
  const auto& ps = b.pieces();
  std::vector<std::int64_t> take(ps.size(), 0);
  while (true) {
    std::vector<IsoclinicPiece> x, y;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (take[i] > 0) x.push_back({ps[i].slope, take[i]});
      if (ps[i].rank - take[i] > 0) y.push_back({ps[i].slope, ps[i].rank - take[i]});
    }
    if (!x.empty() && !y.empty()) out.emplace_back(Bundle::canonicalize(x), Bundle::canonicalize(y));
    std::size_t i = 0;
    for (; i < ps.size(); ++i) {
      take[i] += ps[i].slope.den();
      if (take[i] <= ps[i].rank) break;
      take[i] = 0;
    }
    if (i == ps.size()) break;
  }
  return out;
}

}  // namespace detail

// Brute-force search over all splittings, ignoring the slope comparisons classify uses.
inline std::vector<ReductionDatum> all_reductions(const Bundle& b, const Bundle& b2, ReductionKind kind) {
  std::vector<ReductionDatum> out;
  auto sb = detail::proper_summands(b);
  auto sb2 = detail::proper_summands(b2);
  for (const auto& [x, xc] : sb) {
    for (const auto& [y, yc] : sb2) {
      std::optional<ReductionDatum> d;
      if (kind == ReductionKind::HN && xc == yc)
        d = ReductionDatum{kind, x.rank(), xc.rank(), {x, xc}, {y, yc}};
      if (kind == ReductionKind::OmegaHN && x == y)
        d = ReductionDatum{kind, x.rank(), xc.rank(), {x, xc}, {y, yc}};
      if (d && datum_violation(*d).empty()) out.push_back(*d);
    }
  }
  return out;
}

struct TransportSubclaim {
  int factor;
  std::int64_t rank;
  Bundle source;
  Bundle target;
  bool carries_mu;
};

struct Transport {
  std::vector<TransportSubclaim> subclaims;
  std::int64_t shift;
};

// <2rho_G, nu_b' - mu - nu_b> - <2rho_M, nu_theta' - mu_M - nu_theta>, each vector dominant.
inline Transport reduction_transport(const ReductionDatum& d) {
  auto v = datum_violation(d);
  if (!v.empty()) throw Error(ErrorCode::InvalidInput, "invalid reduction datum: " + v);
  Bundle b = direct_sum(d.theta.first, d.theta.second);
  Bundle b2 = direct_sum(d.theta_prime.first, d.theta_prime.second);
  std::int64_t n = d.m1 + d.m2;
  Rational g = two_rho_pairing(newton_point(b2)) - two_rho_pairing(mu_std(n)) - two_rho_pairing(newton_point(b));
  auto block = [](const Bundle& s, const Bundle& t, bool mu) {
    Rational m = mu ? two_rho_pairing(mu_std(s.rank())) : Rational(0);
    return two_rho_pairing(newton_point(t)) - m - two_rho_pairing(newton_point(s));
  };
  Rational m = block(d.theta.first, d.theta_prime.first, d.mu_factor() == 1) +
               block(d.theta.second, d.theta_prime.second, d.mu_factor() == 2);
  Rational shift = g - m;
  if (!shift.is_integer()) throw Error(ErrorCode::NonIntegralShift, "shift " + shift.str());
  Transport t{{}, shift.num()};
  t.subclaims.push_back({1, d.m1, d.theta.first, d.theta_prime.first, d.mu_factor() == 1});
  t.subclaims.push_back({2, d.m2, d.theta.second, d.theta_prime.second, d.mu_factor() == 2});
  return t;
}

}  // namespace ffhecke
