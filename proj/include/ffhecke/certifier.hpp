#pragma once

#include <cstdlib>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ffhecke/claim.hpp"
#include "ffhecke/json_io.hpp"

namespace ffhecke::cert {

using json = nlohmann::json;

enum class Rule {
  DetTwist,
  BaseChiC,
  BaseR1Axiom,
  ReduceViaHN,
  NoModification,
  NotInBGL,
  NegativeMinSlope,
  ExceptionalSet,
  CombineChi,
  Axiom11Case,
};

inline const char* to_string(Rule r) {
  switch (r) {
    case Rule::DetTwist: return "DetTwist";
    case Rule::BaseChiC: return "BaseChiC";
    case Rule::BaseR1Axiom: return "BaseR1Axiom";
    case Rule::ReduceViaHN: return "ReduceViaHN";
    case Rule::NoModification: return "NoModification";
    case Rule::NotInBGL: return "NotInBGL";
    case Rule::NegativeMinSlope: return "NegativeMinSlope";
    case Rule::ExceptionalSet: return "ExceptionalSet";
    case Rule::CombineChi: return "CombineChi";
    case Rule::Axiom11Case: return "Axiom11Case";
  }
  return "?";
}

inline constexpr const char* kTraceFormat = "ffhecke-trace/1";

struct Budget {
  int max_depth = 64;
  std::size_t max_candidates = 100000;

  // FFHECKE_BUDGET replaces the per-node candidate cap.
  static Budget from_env() {
    Budget b;
    if (const char* v = std::getenv("FFHECKE_BUDGET")) {
      char* end = nullptr;
      long long x = std::strtoll(v, &end, 10);
      if (end != v && *end == '\0' && x > 0) b.max_candidates = static_cast<std::size_t>(x);
    }
    return b;
  }
};

// Claims are stored once and referenced by key, so shared sub-claims are not duplicated.
struct Trace {
  std::string root;
  std::map<std::string, json> claims;

  json to_json() const {
    json cl = json::array();
    for (const auto& [k, v] : claims) cl.push_back(v);
    return {{"format", kTraceFormat}, {"root", root}, {"claims", cl}};
  }
};

struct Verdict {
  enum class Kind { Certified, Failed, OutOfBudget };
  Kind kind = Kind::Failed;
  Trace trace;
  std::string failed_claim;
  std::string reason;
  std::vector<std::string> log;

  bool certified() const { return kind == Kind::Certified; }
};

inline const char* to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Certified: return "Certified";
    case Verdict::Kind::Failed: return "Failed";
    case Verdict::Kind::OutOfBudget: return "OutOfBudget";
  }
  return "?";
}

namespace detail {

inline json node(Rule r, json evidence, json children = json::array()) {
  return {{"rule", to_string(r)}, {"evidence", std::move(evidence)}, {"children", std::move(children)}};
}

inline json ref(const std::string& key) { return {{"claim", key}}; }

// Evidence that x <= y (dominance of Newton polygons) fails, canonical kind first.
inline std::optional<json> not_leq_witness(const Bundle& x, const Bundle& y) {
  using io::compact::rat;
  if (nu_max(x) > nu_max(y)) return json{{"kind", "nu_max"}, {"lhs", rat(nu_max(x))}, {"rhs", rat(nu_max(y))}};
  if (nu_min(x) < nu_min(y)) return json{{"kind", "nu_min"}, {"lhs", rat(nu_min(x))}, {"rhs", rat(nu_min(y))}};
  auto hx = hn_values(x), hy = hn_values(y);
  for (std::size_t k = 1; k < hx.size(); ++k)
    if (hx[k] > hy[k])
      return json{{"kind", "partial_sum"}, {"k", static_cast<std::int64_t>(k)}, {"lhs", rat(hx[k])}, {"rhs", rat(hy[k])}};
  return std::nullopt;
}

// Ordered list without repeats.
class KeyList {
 public:
  void add(const std::string& k) {
    if (seen_.insert(k).second) keys_.push_back(k);
  }
  void append_refs(json& children) const {
    for (const auto& k : keys_) children.push_back(ref(k));
  }

 private:
  std::vector<std::string> keys_;
  std::set<std::string> seen_;
};

inline bool is_unit_pair(const Character& a, const Character& b) {
  auto unit_index = [](const Character& x) -> std::optional<std::size_t> {
    std::optional<std::size_t> at;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 1 && !at) at = i;
      else if (x[i] != 0) return std::nullopt;
    }
    return at;
  };
  auto i = unit_index(a), j = unit_index(b);
  return i && j && *i != *j;
}

}  // namespace detail

class Certifier {
 public:
  explicit Certifier(Budget budget = Budget::from_env()) : budget_(budget) {}

  Verdict certify(const LeviDatum& L, const Character& chi) {
    Verdict v;
    try {
      require_length(L, chi);
      std::string root = prove(L, chi, 0);
      v.trace = collect(root);
      cross_check(L, chi, v.trace.claims.at(root));
      v.kind = Verdict::Kind::Certified;
      for (const auto& [k, entry] : v.trace.claims) {
        const auto& ev = entry["node"]["evidence"];
        if (ev.contains("tie_break_retry") && ev["tie_break_retry"].get<bool>())
          v.log.push_back(k + ": certified with a non-default tie-break for c");
      }
    } catch (const Failure& f) {
      v.kind = Verdict::Kind::Failed;
      v.failed_claim = f.key;
      v.reason = f.reason;
    } catch (const OutOfBudgetSignal& o) {
      v.kind = Verdict::Kind::OutOfBudget;
      v.reason = o.reason;
    } catch (const Error& e) {
      v.kind = Verdict::Kind::Failed;
      v.failed_claim = claim_key(L, chi);
      v.reason = e.what();
    }
    return v;
  }

  std::size_t cached_claims() const {
    std::shared_lock lock(mu_);
    return cache_.size();
  }

 private:
  struct Failure {
    std::string key;
    std::string reason;
  };
  struct OutOfBudgetSignal {
    std::string reason;
  };

  std::optional<json> lookup(const std::string& key) const {
    std::shared_lock lock(mu_);
    auto it = cache_.find(key);
    if (it == cache_.end()) return std::nullopt;
    return it->second;
  }

  bool has(const std::string& key) const {
    std::shared_lock lock(mu_);
    return cache_.count(key) > 0;
  }

  Trace collect(const std::string& root) const {
    Trace t;
    t.root = root;
    std::deque<std::string> todo{root};
    while (!todo.empty()) {
      auto k = todo.front();
      todo.pop_front();
      if (t.claims.count(k)) continue;
      auto e = lookup(k);
      if (!e) throw Failure{k, "claim missing from cache"};
      t.claims.emplace(k, *e);
      std::vector<const json*> stack{&(*e)["node"]};
      while (!stack.empty()) {
        const json* n = stack.back();
        stack.pop_back();
        for (const auto& c : (*n)["children"]) {
          if (c.contains("claim"))
            todo.push_back(c["claim"].get<std::string>());
          else
            stack.push_back(&c);
        }
      }
    }
    return t;
  }

  void cross_check(const LeviDatum& L, const Character& chi, const json& entry) const {
    auto direct = stalk(ParameterDatum::generic(L), chi, trivial_label(L));
    if (entry["target"] != io::compact::label(direct.target))
      throw Failure{claim_key(L, chi), "certified target disagrees with the stalk evaluator"};
  }

  std::string prove(const LeviDatum& L, const Character& chi, int depth) {
    std::string key = claim_key(L, chi);
    if (has(key)) return key;
    if (depth > budget_.max_depth) throw OutOfBudgetSignal{"recursion depth exceeded at " + key};
    using io::compact::bundle;
    Bundle target = b_of_chi(L, chi).bundle;
    json nd;
    if (L.r() == 1) {
      nd = detail::node(Rule::BaseR1Axiom, {{"axiom", true}, {"target", bundle(target)}});
    } else if (!chi.is_nonnegative()) {
      auto dn = det_normalize(chi, L);
      auto child = prove(L, dn.chi, depth + 1);
      nd = detail::node(Rule::DetTwist,
                        {{"det_power", dn.det_power}, {"chi_norm", dn.chi.values()}, {"target", bundle(target)}},
                        json::array({detail::ref(child)}));
    } else if (chi.total() == 0) {
      nd = detail::node(Rule::BaseChiC, {{"identity", true}, {"target", bundle(target)}});
    } else {
      auto order = minimal_positive_factors(L, chi);
      std::optional<Failure> first;
      for (std::size_t t = 0; t < order.size() && nd.is_null(); ++t) {
        try {
          nd = combine_step(L, chi, order[t], t > 0, depth);
        } catch (const Failure& f) {
          if (!first) first = f;
        }
      }
      if (nd.is_null()) throw *first;
    }
    json entry = {{"key", key},
                  {"levi", L.parts()},
                  {"chi", chi.values()},
                  {"measure", claim_measure(L, chi)},
                  {"target", io::compact::label(label_of_degrees(L, chi))},
                  {"node", nd}};
    std::unique_lock lock(mu_);
    cache_.emplace(key, std::move(entry));
    return key;
  }

  json combine_step(const LeviDatum& L, const Character& chi, std::size_t c, bool retry, int depth) {
    using io::compact::bundle;
    using io::compact::rat;
    const std::string key = claim_key(L, chi);
    Character xi = chi - Character::unit(L.r(), c);
    std::string xi_key = prove(L, xi, depth + 1);
    Bundle src = b_of_chi(L, xi).bundle;
    Bundle tgt = b_of_chi(L, chi).bundle;
    CategoryLabel src_label = label_of_degrees(L, xi);
    auto win = modification_window(src);
    auto all = enumerate_bundles(L.n(), chi.total(), win.lo, win.hi);
    if (all.size() > budget_.max_candidates) throw OutOfBudgetSignal{"candidate cap exceeded at " + key};

    json children = json::array({detail::ref(xi_key)});
    std::vector<Bundle> cands;
    for (auto& b : all)
      if (std_sandwich(src, b)) cands.push_back(b);
    children.push_back(detail::node(Rule::NoModification, {{"window", {rat(win.lo), rat(win.hi)}},
                                                            {"enumerated", all.size()},
                                                            {"candidates", cands.size()}}));
    std::vector<Bundle> exceptional;
    bool target_found = false;
    for (const auto& b : cands) {
      if (characters_of(L, b).empty()) {
        children.push_back(detail::node(Rule::NotInBGL, {{"bundle", bundle(b)}}));
      } else if (nu_min(b) < Rational(0)) {
        children.push_back(detail::node(Rule::NegativeMinSlope, {{"bundle", bundle(b)}, {"nu_min", rat(nu_min(b))}}));
      } else if (auto d = classify_reducibility(src, b)) {
        children.push_back(reduce_node(L, xi, c, src_label, b, tgt, *d, depth, target_found));
      } else {
        exceptional.push_back(b);
      }
    }
    if (!target_found) throw Failure{key, "target " + to_string(tgt) + " is not reached by a reducible modification"};
    if (!exceptional.empty()) {
      if (chi.total() == 1) throw Failure{key, "irreducible candidates from the trivial source"};
      children.push_back(exceptional_node(L, chi, exceptional, tgt, depth));
    }
    json ev = {{"c", c + 1},
               {"xi", xi.values()},
               {"source", bundle(src)},
               {"target", bundle(tgt)},
               {"tie_break_retry", retry}};
    return detail::node(chi.total() == 1 ? Rule::BaseChiC : Rule::CombineChi, ev, children);
  }

  json reduce_node(const LeviDatum& L, const Character& xi, std::size_t c, const CategoryLabel& src_label,
                   const Bundle& b, const Bundle& tgt, const ReductionDatum& d, int depth, bool& target_found) {
    using io::compact::bundle;
    const std::string key = claim_key(L, xi + Character::unit(L.r(), c));
    auto tr = reduction_transport(d);
    const bool first = d.mu_factor() == 1;
    const Bundle& theta_j = first ? d.theta.first : d.theta.second;
    const Bundle& theta_pj = first ? d.theta_prime.first : d.theta_prime.second;

    // Factor sets that can sit on the block carrying mu.
    std::vector<std::vector<std::size_t>> modified;
    const auto& asg = src_label.assignment();
    auto complement = [&](const std::vector<std::size_t>& away) {
      std::vector<std::size_t> m;
      for (std::size_t i = 0; i < L.r(); ++i)
        if (std::find(away.begin(), away.end(), i) == away.end()) m.push_back(i);
      return m;
    };
    if (d.kind == ReductionKind::OmegaHN) {
      modified.push_back(complement(asg.front()));
    } else {
      const auto& fmin = asg.back();
      const std::size_t k = fmin.size();
      for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::vector<std::size_t> away;
        std::int64_t rank = 0;
        for (std::size_t t = 0; t < k; ++t)
          if (mask & (std::size_t{1} << t)) {
            away.push_back(fmin[t]);
            rank += L.part(fmin[t]);
          }
        if (rank == d.m2) modified.push_back(complement(away));
      }
      std::sort(modified.begin(), modified.end());
    }

    json splits = json::array();
    detail::KeyList refs;
    bool any_match = false;
    for (const auto& m : modified) {
      std::vector<std::int64_t> parts, src_chi;
      std::optional<std::size_t> pos;
      for (std::size_t t = 0; t < m.size(); ++t) {
        parts.push_back(L.part(m[t]));
        src_chi.push_back(xi[m[t]]);
        if (m[t] == c) pos = t;
      }
      LeviDatum sub(parts);
      Character sub_src(src_chi);
      if (!(b_of_chi(sub, sub_src).bundle == theta_j)) throw Failure{key, "split factors do not realise the block"};
      json ft = nullptr;
      bool match = false;
      if (pos) {
        Character sub_tgt = sub_src + Character::unit(sub.r(), *pos);
        Bundle fb = b_of_chi(sub, sub_tgt).bundle;
        match = fb == theta_pj;
        ft = bundle(fb);
        refs.add(prove(sub, sub_src, depth + 1));
        refs.add(prove(sub, sub_tgt, depth + 1));
      }
      any_match = any_match || match;
      json fac = json::array();
      for (auto i : m) fac.push_back(i + 1);
      splits.push_back({{"factors", fac},
                        {"levi", parts},
                        {"source_chi", src_chi},
                        {"c_present", pos.has_value()},
                        {"factor_target", ft},
                        {"match", match}});
    }
    if (any_match && !(b == tgt)) throw Failure{key, "a non-target stratum " + to_string(b) + " survives"};
    if (b == tgt && !any_match) throw Failure{key, "the target stratum vanishes"};
    if (any_match) target_found = true;
    json ev = {{"bundle", bundle(b)},
               {"kind", to_string(d.kind)},
               {"m1", d.m1},
               {"m2", d.m2},
               {"theta", {bundle(d.theta.first), bundle(d.theta.second)}},
               {"theta_prime", {bundle(d.theta_prime.first), bundle(d.theta_prime.second)}},
               {"shift", tr.shift},
               {"splits", splits},
               {"outcome", any_match ? "target" : "vanishes"}};
    json children = json::array();
    refs.append_refs(children);
    return detail::node(Rule::ReduceViaHN, ev, children);
  }

  // Exceptional-set conditions, trying the unprimed variant first.
  json exceptional_node(const LeviDatum& L, const Character& chi, const std::vector<Bundle>& S, const Bundle& tgt,
                        int depth) {
    const std::string key = claim_key(L, chi);
    auto parent_measure = claim_measure(L, chi);
    for (const auto& s : S)
      if (nu_min(s) < Rational(0)) throw Failure{key, "exceptional candidate with negative slope"};
    for (bool primed : {false, true}) {
      json members = json::array();
      json axioms = json::array();
      detail::KeyList rec, ih;
      bool ok = true;
      for (const auto& s : S) {
        auto closure = primed ? detail::not_leq_witness(tgt, s) : detail::not_leq_witness(s, tgt);
        if (!closure) {
          ok = false;
          break;
        }
        json xis = json::array();
        for (const auto& xi : characters_of(L, s)) {
          std::optional<json> entry;
          for (std::size_t c = 0; c < L.r() && !entry; ++c) {
            if (chi[c] <= 0 || xi[c] <= 0) continue;
            Character a = chi - Character::unit(L.r(), c);
            Character b = xi - Character::unit(L.r(), c);
            Bundle x = b_of_chi(L, a).bundle, y = b_of_chi(L, b).bundle;
            std::optional<json> w;
            if (x == y)
              w = json{{"kind", "equal"}};
            else
              w = primed ? detail::not_leq_witness(x, y) : detail::not_leq_witness(y, x);
            if (w) {
              entry = json{{"xi", xi.values()}, {"c", c + 1}, {"witness", *w}};
              ih.add(claim_key(L, a));
              ih.add(claim_key(L, b));
            }
          }
          if (!entry && primed) {
            for (std::size_t c = 0; c < L.r() && !entry; ++c) {
              if (chi[c] <= 0 || xi[c] <= 0) continue;
              Character a = chi - Character::unit(L.r(), c);
              Character b = xi - Character::unit(L.r(), c);
              if (L.r() == 2 && detail::is_unit_pair(a, b)) {
                entry = json{{"xi", xi.values()}, {"c", c + 1}, {"witness", "axiom"}};
                axioms.push_back(detail::node(Rule::Axiom11Case,
                                              {{"axiom", true}, {"c", c + 1}, {"from", a.values()}, {"to", b.values()}}));
                ih.add(claim_key(L, a));
                ih.add(claim_key(L, b));
              }
            }
          }
          if (!entry) {
            ok = false;
            break;
          }
          if (!(claim_measure(L, xi) < parent_measure))
            throw Failure{key, "exceptional recursion on " + claim_key(L, xi) + " does not decrease the measure"};
          rec.add(claim_key(L, xi));
          xis.push_back(*entry);
        }
        if (!ok) break;
        members.push_back({{"bundle", io::compact::bundle(s)},
                           {"nu_min", io::compact::rat(nu_min(s))},
                           {"closure", *closure},
                           {"xis", xis}});
      }
      if (!ok) continue;
      json children = json::array();
      rec.append_refs(children);
      ih.append_refs(children);
      for (const auto& j : children) {
        auto k = j["claim"].get<std::string>();
        auto lc = parse_key(k);
        prove(lc.first, lc.second, depth + 1);
      }
      for (auto& a : axioms) children.push_back(a);
      return detail::node(Rule::ExceptionalSet, {{"variant", primed ? "2'/4'" : "2/4"}, {"members", members}}, children);
    }
    throw Failure{key, "exceptional set " + describe(S) + " is not discharged"};
  }

  static std::pair<LeviDatum, Character> parse_key(const std::string& k) {
    auto split = [](const std::string& s) {
      std::vector<std::int64_t> v;
      std::size_t p = 0;
      while (p < s.size()) {
        auto q = s.find(',', p);
        if (q == std::string::npos) q = s.size();
        v.push_back(std::stoll(s.substr(p, q - p)));
        p = q + 1;
      }
      return v;
    };
    auto semi = k.find(';');
    return {LeviDatum(split(k.substr(2, semi - 2))), Character(split(k.substr(semi + 5)))};
  }

  static std::string describe(const std::vector<Bundle>& S) {
    std::string s = "{";
    for (std::size_t i = 0; i < S.size(); ++i) s += (i ? ", " : "") + to_string(S[i]);
    return s + "}";
  }

  Budget budget_;
  mutable std::shared_mutex mu_;
  std::map<std::string, json> cache_;
};

}  // namespace ffhecke::cert
