#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ffhecke/label.hpp"
#include "ffhecke/modifications.hpp"

namespace ffhecke {

inline std::string claim_key(const LeviDatum& L, const Character& chi) {
  return "L=" + format_ints(L.parts()) + ";chi=" + format_ints(chi.values());
}

// Opaque factor labels standing in for phi_1, ..., phi_r. lst_valid is the caller's promise
// that the factors are pairwise non-isomorphic and not Tate-twist related.
class ParameterDatum {
 public:
  ParameterDatum(LeviDatum levi, std::vector<std::string> ids, bool lst_valid = true)
      : levi_(std::move(levi)), ids_(std::move(ids)), lst_valid_(lst_valid) {
    if (ids_.size() != levi_.r()) throw Error(ErrorCode::LengthMismatch, "one factor label per Levi part");
    std::set<std::string> seen(ids_.begin(), ids_.end());
    if (seen.size() != ids_.size()) throw Error(ErrorCode::InvalidParameter, "factor labels must be distinct");
  }

  static ParameterDatum generic(const LeviDatum& L) {
    std::vector<std::string> ids;
    for (std::size_t i = 1; i <= L.r(); ++i) ids.push_back("phi" + std::to_string(i));
    return ParameterDatum(L, ids, true);
  }

  const LeviDatum& levi() const { return levi_; }
  const std::vector<std::string>& factor_ids() const { return ids_; }
  bool lst_valid() const { return lst_valid_; }

 private:
  LeviDatum levi_;
  std::vector<std::string> ids_;
  bool lst_valid_;
};

struct StalkResult {
  CategoryLabel target = CategoryLabel::zero();
  bool is_equivalence = false;
  // d(b') - d(b) with d = <2rho, nu>: the renormalisation shift between the raw and
  // renormalised stalk functors. Zero for a vanishing stalk.
  std::int64_t shift_ledger = 0;
  // Key of the certifier claim that backs the answer.
  std::string evidence;

  static StalkResult zero() { return {}; }
  bool is_zero() const { return target.is_zero(); }
};

inline void require_valid(const ParameterDatum& phi) {
  if (!phi.lst_valid()) throw Error(ErrorCode::InvalidParameter, "parameter is not of Langlands-Shahidi type");
}

inline CategoryLabel trivial_label(const LeviDatum& L) { return label_of_degrees(L, Character::zero(L.r())); }

inline std::int64_t renormalisation_shift(const Bundle& from, const Bundle& to) {
  Rational s = two_rho_pairing(newton_point(to)) - two_rho_pairing(newton_point(from));
  if (!s.is_integer()) throw Error(ErrorCode::NonIntegralShift, "renormalisation shift " + s.str());
  return s.num();
}

inline StalkResult stalk(const ParameterDatum& phi, const Character& chi, const CategoryLabel& source) {
  require_valid(phi);
  const auto& L = phi.levi();
  require_length(L, chi);
  if (source.is_zero()) return StalkResult::zero();
  Character a = factor_degrees(L, source) + chi;
  StalkResult r;
  r.target = label_of_degrees(L, a);
  r.is_equivalence = true;
  r.shift_ledger = renormalisation_shift(source.bundle(), r.target.bundle());
  r.evidence = claim_key(L, a);
  return r;
}

// Source given as a bare bundle: Zero outside B(G)_L; a bundle carrying several labels is ambiguous.
inline StalkResult stalk(const ParameterDatum& phi, const Character& chi, const Bundle& source) {
  require_valid(phi);
  auto labels = labels_of_bundle(phi.levi(), source);
  if (labels.empty()) return StalkResult::zero();
  if (labels.size() > 1)
    throw Error(ErrorCode::InvalidParameter, to_string(source) + " carries several labels; pass one explicitly");
  return stalk(phi, chi, labels.front());
}

// The stalk restricted to one target stratum.
inline StalkResult stalk_at(const ParameterDatum& phi, const Character& chi, const CategoryLabel& source,
                            const Bundle& probe) {
  auto r = stalk(phi, chi, source);
  if (r.is_zero() || !(r.target.bundle() == probe)) return StalkResult::zero();
  return r;
}

struct StdComponent {
  Character chi;
  std::int64_t multiplicity;
  std::string factor;
};

// Std restricted to Z(L^) = G_m^r: the sum over c of chi_c with multiplicity n_c.
inline std::vector<StdComponent> decompose_std(const ParameterDatum& phi) {
  require_valid(phi);
  const auto& L = phi.levi();
  std::vector<StdComponent> out;
  for (std::size_t c = 0; c < L.r(); ++c) out.push_back({Character::unit(L.r(), c), L.part(c), phi.factor_ids()[c]});
  return out;
}

// Indices c with chi(c) > 0 whose slope chi(c)/n_c is minimal, best first: smaller n_c,
// then larger index.
inline std::vector<std::size_t> minimal_positive_factors(const LeviDatum& L, const Character& chi) {
  std::vector<std::size_t> idx;
  for (std::size_t c = 0; c < L.r(); ++c)
    if (chi[c] > 0) idx.push_back(c);
  if (idx.empty()) return idx;
  Rational best = factor_slope(L, chi, idx.front());
  for (auto c : idx) best = std::min(best, factor_slope(L, chi, c));
  std::vector<std::size_t> out;
  for (auto c : idx)
    if (factor_slope(L, chi, c) == best) out.push_back(c);
  std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
    if (L.part(a) != L.part(b)) return L.part(a) < L.part(b);
    return a > b;
  });
  return out;
}

// chi = chi_{c_1} ... chi_{c_s} in application order; c_s is the factor peeled off first.
inline std::vector<std::size_t> factor_chi(const LeviDatum& L, const Character& chi) {
  require_length(L, chi);
  if (!chi.is_nonnegative()) throw Error(ErrorCode::NegativeCharacter, "factor_chi needs chi >= 0");
  std::vector<std::size_t> picks;
  Character cur = chi;
  while (cur.total() > 0) {
    auto c = minimal_positive_factors(L, cur).front();
    picks.push_back(c);
    cur = cur - Character::unit(L.r(), c);
  }
  std::reverse(picks.begin(), picks.end());
  return picks;
}

inline StalkResult compose(const ParameterDatum& phi, const Character& chi, const Character& chi2,
                           const CategoryLabel& source) {
  auto direct = stalk(phi, chi + chi2, source);
  auto first = stalk(phi, chi, source);
  auto chained = first.is_zero() ? StalkResult::zero() : stalk(phi, chi2, first.target);
  if (!(direct.target == chained.target)) throw Error(ErrorCode::CoherenceFailure, "chained stalk differs from direct");
  return chained;
}

struct DetNormalized {
  Character chi;
  std::int64_t det_power;
};

// Smallest k >= 0 with chi + k * chi_det >= 0.
inline DetNormalized det_normalize(const Character& chi, const LeviDatum& L) {
  require_length(L, chi);
  std::int64_t k = 0;
  for (std::size_t i = 0; i < L.r(); ++i) k = std::max(k, Rational(checked::neg(chi[i]), L.part(i)).ceil());
  return {chi + Character::det(L).scaled(k), k};
}

struct Generator {
  enum class Kind { OChi, TStd, TStdDual, TDet, Shift, Twist };
  Kind kind;
  Character chi;
  std::int64_t shift = 0;
  Rational twist;

  static Generator o_chi(Character c) { return {Kind::OChi, std::move(c), 0, Rational(0)}; }
  static Generator t_std() { return {Kind::TStd, {}, 0, Rational(0)}; }
  static Generator t_std_dual() { return {Kind::TStdDual, {}, 0, Rational(0)}; }
  static Generator t_det() { return {Kind::TDet, {}, 0, Rational(0)}; }
  static Generator shift_by(std::int64_t k) { return {Kind::Shift, {}, k, Rational(0)}; }
  static Generator twist_by(Rational m) {
    if (m.den() > 2) throw Error(ErrorCode::InvalidInput, "Tate twists are half-integers");
    return {Kind::Twist, {}, 0, m};
  }
};

// Applied first to last.
using OperatorExpr = std::vector<Generator>;

// One summand of the rewritten expression: O(chi)[shift](twist) tensored with the
// uninterpreted complexes K = RHom(phi_c, phi_c) for each c in markers.
struct Term {
  Character chi;
  std::int64_t shift = 0;
  Rational twist;
  std::int64_t multiplicity = 1;
  std::vector<std::size_t> markers;
  friend bool operator==(const Term&, const Term&) = default;
};

inline std::vector<Term> expand(const ParameterDatum& phi, const OperatorExpr& expr) {
  require_valid(phi);
  const auto& L = phi.levi();
  std::vector<Term> terms{Term{Character::zero(L.r()), 0, Rational(0), 1, {}}};
  for (const auto& g : expr) {
    std::vector<Term> next;
    for (const auto& t : terms) {
      switch (g.kind) {
        case Generator::Kind::OChi:
          require_length(L, g.chi);
          next.push_back({t.chi + g.chi, t.shift, t.twist, t.multiplicity, t.markers});
          break;
        case Generator::Kind::TDet:
          next.push_back({t.chi + Character::det(L), t.shift, t.twist, t.multiplicity, t.markers});
          break;
        case Generator::Kind::TStd:
        case Generator::Kind::TStdDual:
          for (const auto& comp : decompose_std(phi)) {
            Term u = t;
            u.chi = g.kind == Generator::Kind::TStd ? t.chi + comp.chi : t.chi - comp.chi;
            u.multiplicity = checked::mul(u.multiplicity, comp.multiplicity);
            auto c = static_cast<std::size_t>(
                std::find(comp.chi.values().begin(), comp.chi.values().end(), 1) - comp.chi.values().begin());
            u.markers.push_back(c);
            std::sort(u.markers.begin(), u.markers.end());
            next.push_back(u);
          }
          break;
        case Generator::Kind::Shift:
          next.push_back({t.chi, checked::add(t.shift, g.shift), t.twist, t.multiplicity, t.markers});
          break;
        case Generator::Kind::Twist:
          next.push_back({t.chi, t.shift, t.twist + g.twist, t.multiplicity, t.markers});
          break;
      }
    }
    terms = std::move(next);
  }
  return terms;
}

struct EvaluatedTerm {
  Term term;
  StalkResult stalk;
};

inline std::vector<EvaluatedTerm> evaluate(const ParameterDatum& phi, const OperatorExpr& expr,
                                           const CategoryLabel& source) {
  std::vector<EvaluatedTerm> out;
  for (auto& t : expand(phi, expr)) {
    auto s = stalk(phi, t.chi, source);
    out.push_back({std::move(t), std::move(s)});
  }
  return out;
}

// The shift and twist normalising the Lubin-Tate stalk on GL_n: [-d]((-d)/2) with d = <2rho, mu_std>.
struct ShiftTwist {
  std::int64_t shift;
  Rational twist;
};

inline ShiftTwist lubin_tate_normalization(std::int64_t n) {
  Rational d = two_rho_pairing(mu_std(n));
  return {checked::neg(d.num()), Rational(checked::neg(d.num()), 2)};
}

}  // namespace ffhecke
