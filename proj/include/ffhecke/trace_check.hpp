#pragma once

// Independent re-verification of derivation traces. Only slope-core, levi and label
// primitives are used here; nothing from the searcher.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ffhecke/claim.hpp"
#include "ffhecke/json_io.hpp"

namespace ffhecke::check {

using json = nlohmann::json;

struct CheckResult {
  bool ok = true;
  std::string failure;
  explicit operator bool() const { return ok; }
};

class TraceChecker {
 public:
  CheckResult check(const json& trace) {
    try {
      run(trace);
      return {};
    } catch (const Reject& r) {
      return {false, r.why};
    } catch (const std::exception& e) {
      return {false, std::string("malformed trace: ") + e.what()};
    }
  }

 private:
  struct Reject {
    std::string why;
  };

  [[noreturn]] static void fail(const std::string& where, const std::string& why) { throw Reject{where + ": " + why}; }

  static void expect(bool cond, const std::string& where, const std::string& why) {
    if (!cond) fail(where, why);
  }

  static void expect_eq(const json& got, const json& want, const std::string& where, const std::string& what) {
    if (got != want) fail(where, what + " is " + got.dump() + ", expected " + want.dump());
  }

  static void expect_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
    expect(obj.is_object(), where, "expected an object");
    expect(obj.size() == keys.size(), where, "unexpected field set " + obj.dump().substr(0, 80));
    for (const char* k : keys) expect(obj.contains(k), where, std::string("missing field ") + k);
  }

  static std::int64_t as_int(const json& j, const std::string& where) {
    expect(j.is_number_integer(), where, "expected an integer");
    return j.get<std::int64_t>();
  }

  static std::vector<std::int64_t> as_ints(const json& j, const std::string& where) {
    expect(j.is_array(), where, "expected an integer array");
    std::vector<std::int64_t> v;
    for (const auto& x : j) v.push_back(as_int(x, where));
    return v;
  }

  // Strict decode: the encoding must already be canonical.
  static Bundle as_bundle(const json& j, const std::string& where) {
    expect(j.is_array() && !j.empty(), where, "expected a bundle");
    std::vector<IsoclinicPiece> ps;
    for (const auto& p : j) {
      expect(p.is_array() && p.size() == 2 && p[0].is_array() && p[0].size() == 2, where, "malformed piece");
      ps.push_back({Rational(as_int(p[0][0], where), as_int(p[0][1], where)), as_int(p[1], where)});
    }
    Bundle b = Bundle::canonicalize(ps);
    expect_eq(j, io::compact::bundle(b), where, "bundle encoding");
    return b;
  }

  static json enc(const Bundle& b) { return io::compact::bundle(b); }
  static json enc(const Rational& r) { return io::compact::rat(r); }

  static json ref(const std::string& k) { return {{"claim", k}}; }

  // Canonical certificate that x <= y fails in the dominance order.
  static std::optional<json> not_leq(const Bundle& x, const Bundle& y) {
    if (nu_max(x) > nu_max(y)) return json{{"kind", "nu_max"}, {"lhs", enc(nu_max(x))}, {"rhs", enc(nu_max(y))}};
    if (nu_min(x) < nu_min(y)) return json{{"kind", "nu_min"}, {"lhs", enc(nu_min(x))}, {"rhs", enc(nu_min(y))}};
    auto hx = hn_values(x), hy = hn_values(y);
    for (std::size_t k = 1; k < hx.size(); ++k)
      if (hx[k] > hy[k])
        return json{{"kind", "partial_sum"}, {"k", static_cast<std::int64_t>(k)}, {"lhs", enc(hx[k])}, {"rhs", enc(hy[k])}};
    return std::nullopt;
  }

  // Re-derives the inequality a witness asserts.
  static void verify_witness(const json& w, const Bundle& x, const Bundle& y, const std::string& where) {
    expect(w.is_object() && w.contains("kind"), where, "malformed witness");
    auto want = not_leq(x, y);
    expect(want.has_value(), where, "claimed non-dominance does not hold");
    expect_eq(w, *want, where, "witness");
    Rational lhs(as_int(w["lhs"][0], where), as_int(w["lhs"][1], where));
    Rational rhs(as_int(w["rhs"][0], where), as_int(w["rhs"][1], where));
    const auto kind = w["kind"].get<std::string>();
    if (kind == "nu_min")
      expect(lhs < rhs, where, "witness inequality");
    else
      expect(lhs > rhs, where, "witness inequality");
  }

  static Rational pairing(const std::vector<Rational>& v) {
    Rational s(0);
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) s += v[i] - v[j];
    return s;
  }

  static std::vector<Rational> slopes(const Bundle& b) {
    std::vector<Rational> v;
    for (const auto& p : b.pieces())
      for (std::int64_t i = 0; i < p.rank; ++i) v.push_back(p.slope);
    return v;
  }

  static bool sandwich(const Bundle& b, const Bundle& b2) {
    if (b.rank() != b2.rank() || kappa(b2) != kappa(b) + 1) return false;
    auto v = slopes(b), v2 = slopes(b2);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v2[i] < v[i] || v2[i] > v[i] + Rational(1)) return false;
    return true;
  }

  static Character unit(std::size_t r, std::size_t c) {
    std::vector<std::int64_t> v(r, 0);
    v[c] = 1;
    return Character(v);
  }

  static std::size_t canonical_factor(const LeviDatum& L, const Character& chi) {
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < L.r(); ++c) {
      if (chi[c] <= 0) continue;
      if (!best) {
        best = c;
        continue;
      }
      Rational s = factor_slope(L, chi, c), t = factor_slope(L, chi, *best);
      if (s < t || (s == t && L.part(c) <= L.part(*best))) best = c;
    }
    return *best;
  }

  void run(const json& trace) {
    expect_keys(trace, {"format", "root", "claims"}, "trace");
    expect_eq(trace["format"], "ffhecke-trace/1", "trace", "format");
    expect(trace["root"].is_string() && trace["claims"].is_array(), "trace", "bad root or claims");
    entries_.clear();
    std::string prev;
    for (const auto& e : trace["claims"]) {
      expect(e.is_object() && e.contains("key") && e["key"].is_string(), "trace", "claim without key");
      auto k = e["key"].get<std::string>();
      expect(prev.empty() || prev < k, k, "claims are not strictly sorted by key");
      prev = k;
      entries_.emplace(k, &e);
    }
    const auto root = trace["root"].get<std::string>();
    expect(entries_.count(root) == 1, "trace", "root claim missing");
    referenced_.clear();
    referenced_.insert(root);
    for (const auto& [k, e] : entries_) verify_entry(k, *e);
    for (const auto& [k, e] : entries_) expect(referenced_.count(k) == 1, k, "claim is never used");
  }

  void verify_entry(const std::string& key, const json& e) {
    expect_keys(e, {"key", "levi", "chi", "measure", "target", "node"}, key);
    LeviDatum L(as_ints(e["levi"], key));
    Character chi(as_ints(e["chi"], key));
    expect(chi.size() == L.r(), key, "character length");
    expect_eq(e["key"], claim_key(L, chi), key, "key");
    auto measure = claim_measure(L, chi);
    expect_eq(e["measure"], measure, key, "measure");
    expect_eq(e["target"], io::compact::label(label_of_degrees(L, chi)), key, "target label");
    Ctx ctx{key, L, chi, measure, {}};
    auto dumped = e.dump();
    auto memo = verified_.find(key);
    if (memo != verified_.end() && memo->second == dumped) {
      collect_refs(e["node"], ctx);
    } else {
      verify_claim_node(e["node"], ctx);
      verified_[key] = dumped;
    }
    for (const auto& k : ctx.refs) {
      auto it = entries_.find(k);
      expect(it != entries_.end(), key, "reference to missing claim " + k);
      referenced_.insert(k);
      const json& child = *it->second;
      LeviDatum cl(as_ints(child["levi"], k));
      Character cc(as_ints(child["chi"], k));
      expect(cc.size() == cl.r(), k, "character length");
      expect(claim_measure(cl, cc) < measure, key, "reference to " + k + " does not decrease the measure");
    }
  }

  struct Ctx {
    std::string key;
    LeviDatum L;
    Character chi;
    std::vector<std::int64_t> measure;
    std::vector<std::string> refs;
  };

  void collect_refs(const json& n, Ctx& ctx) {
    for (const auto& c : n["children"]) {
      if (c.contains("claim"))
        ctx.refs.push_back(c["claim"].get<std::string>());
      else
        collect_refs(c, ctx);
    }
  }

  static void expect_node(const json& n, const char* rule, const std::string& where) {
    expect_keys(n, {"rule", "evidence", "children"}, where);
    expect_eq(n["rule"], rule, where, "rule");
    expect(n["children"].is_array(), where, "children must be an array");
  }

  void expect_ref(const json& c, const std::string& key, Ctx& ctx, const std::string& where) {
    expect_eq(c, ref(key), where, "child reference");
    ctx.refs.push_back(key);
  }

  void verify_claim_node(const json& n, Ctx& ctx) {
    const auto& L = ctx.L;
    const auto& chi = ctx.chi;
    const auto& where = ctx.key;
    Bundle target = b_of_chi(L, chi).bundle;
    if (L.r() == 1) {
      expect_node(n, "BaseR1Axiom", where);
      expect_eq(n["evidence"], json{{"axiom", true}, {"target", enc(target)}}, where, "evidence");
      expect(n["children"].empty(), where, "axiom node has children");
      return;
    }
    if (!chi.is_nonnegative()) {
      expect_node(n, "DetTwist", where);
      std::int64_t k = 0;
      for (std::size_t i = 0; i < L.r(); ++i)
        while (chi[i] + k * L.part(i) < 0) ++k;
      std::vector<std::int64_t> norm;
      for (std::size_t i = 0; i < L.r(); ++i) norm.push_back(chi[i] + k * L.part(i));
      expect_eq(n["evidence"], json{{"det_power", k}, {"chi_norm", norm}, {"target", enc(target)}}, where, "evidence");
      expect(n["children"].size() == 1, where, "DetTwist has one premise");
      expect_ref(n["children"][0], claim_key(L, Character(norm)), ctx, where);
      return;
    }
    if (chi.total() == 0) {
      expect_node(n, "BaseChiC", where);
      expect_eq(n["evidence"], json{{"identity", true}, {"target", enc(target)}}, where, "evidence");
      expect(n["children"].empty(), where, "identity node has children");
      return;
    }
    verify_step(n, ctx, target);
  }

  void verify_step(const json& n, Ctx& ctx, const Bundle& target) {
    const auto& L = ctx.L;
    const auto& chi = ctx.chi;
    const auto where = ctx.key;
    expect_node(n, chi.total() == 1 ? "BaseChiC" : "CombineChi", where);
    const json& ev = n["evidence"];
    expect_keys(ev, {"c", "xi", "source", "target", "tie_break_retry"}, where);
    auto c1 = as_int(ev["c"], where);
    expect(c1 >= 1 && c1 <= static_cast<std::int64_t>(L.r()), where, "c out of range");
    auto c = static_cast<std::size_t>(c1 - 1);
    expect(chi[c] > 0, where, "chi(c) must be positive");
    for (std::size_t d = 0; d < L.r(); ++d)
      if (chi[d] > 0) expect(factor_slope(L, chi, d) >= factor_slope(L, chi, c), where, "c is not a minimal positive slope");
    expect(ev["tie_break_retry"].is_boolean(), where, "tie_break_retry must be boolean");
    bool retry = ev["tie_break_retry"].get<bool>();
    expect((c == canonical_factor(L, chi)) != retry, where, "tie-break flag inconsistent with c");
    Character xi = chi - unit(L.r(), c);
    expect_eq(ev["xi"], xi.values(), where, "xi");
    Bundle src = b_of_chi(L, xi).bundle;
    expect_eq(ev["source"], enc(src), where, "source");
    expect_eq(ev["target"], enc(target), where, "target");

    const json& ch = n["children"];
    expect(ch.size() >= 2, where, "missing premises");
    expect_ref(ch[0], claim_key(L, xi), ctx, where);

    // Window from monotonicity and the k = 1 bound; candidates are exactly the sandwich set.
    Rational lo = nu_min(src);
    Rational hi = std::max(nu_max(src) + Rational(1), Rational(1));
    auto all = enumerate_bundles(L.n(), chi.total(), lo, hi);
    std::vector<Bundle> cands;
    for (const auto& b : all)
      if (sandwich(src, b)) cands.push_back(b);
    expect_node(ch[1], "NoModification", where);
    expect_eq(ch[1]["evidence"],
              json{{"window", {enc(lo), enc(hi)}}, {"enumerated", all.size()}, {"candidates", cands.size()}}, where,
              "NoModification evidence");
    expect(ch[1]["children"].empty(), where, "NoModification has children");

    std::size_t pos = 2;
    std::vector<Bundle> exceptional;
    int targets = 0;
    for (const auto& b : cands) {
      const std::string at = where + " candidate " + to_string(b);
      bool in_bgl = !characters_of(L, b).empty();
      if (!in_bgl) {
        expect(pos < ch.size(), at, "missing discharge");
        expect_node(ch[pos], "NotInBGL", at);
        expect_eq(ch[pos]["evidence"], json{{"bundle", enc(b)}}, at, "evidence");
        expect(ch[pos]["children"].empty(), at, "NotInBGL has children");
        ++pos;
      } else if (nu_min(b) < Rational(0)) {
        expect(pos < ch.size(), at, "missing discharge");
        expect_node(ch[pos], "NegativeMinSlope", at);
        expect_eq(ch[pos]["evidence"], json{{"bundle", enc(b)}, {"nu_min", enc(nu_min(b))}}, at, "evidence");
        expect(ch[pos]["children"].empty(), at, "NegativeMinSlope has children");
        ++pos;
      } else if (nu_min(b) == nu_min(src) || nu_max(b) == nu_max(src)) {
        expect(pos < ch.size(), at, "missing discharge");
        if (verify_reduction(ch[pos], ctx, xi, c, src, b, target, at)) ++targets;
        ++pos;
      } else {
        exceptional.push_back(b);
      }
    }
    expect(targets == 1, where, "the target stratum must be reached exactly once");
    if (exceptional.empty()) {
      expect(pos == ch.size(), where, "unexpected extra children");
      return;
    }
    expect(chi.total() > 1, where, "irreducible candidates from the trivial source");
    expect(pos + 1 == ch.size(), where, "exceptional set must be the last child");
    verify_exceptional(ch[pos], ctx, exceptional, target);
  }

  bool verify_reduction(const json& n, Ctx& ctx, const Character& xi, std::size_t c, const Bundle& src,
                        const Bundle& b, const Bundle& target, const std::string& where) {
    const auto& L = ctx.L;
    expect_node(n, "ReduceViaHN", where);
    const json& ev = n["evidence"];
    expect_keys(ev, {"bundle", "kind", "m1", "m2", "theta", "theta_prime", "shift", "splits", "outcome"}, where);
    expect_eq(ev["bundle"], enc(b), where, "bundle");
    bool hn = nu_min(b) == nu_min(src);
    expect_eq(ev["kind"], hn ? "HN" : "OmegaHN", where, "kind");
    expect(ev["theta"].is_array() && ev["theta"].size() == 2, where, "theta");
    expect(ev["theta_prime"].is_array() && ev["theta_prime"].size() == 2, where, "theta'");
    Bundle t1 = as_bundle(ev["theta"][0], where), t2 = as_bundle(ev["theta"][1], where);
    Bundle s1 = as_bundle(ev["theta_prime"][0], where), s2 = as_bundle(ev["theta_prime"][1], where);
    expect_eq(ev["m1"], t1.rank(), where, "m1");
    expect_eq(ev["m2"], t2.rank(), where, "m2");
    expect(s1.rank() == t1.rank() && s2.rank() == t2.rank(), where, "block ranks differ");
    expect(direct_sum(t1, t2) == src, where, "theta does not sum to the source");
    expect(direct_sum(s1, s2) == b, where, "theta' does not sum to the candidate");
    if (hn) {
      expect(t2 == s2, where, "theta_2 != theta'_2");
      expect(kappa(s1) == kappa(t1) + 1, where, "kappa(theta'_1) = kappa(theta_1) + 1 fails");
      expect(nu_max(s2) < nu_min(s1), where, "nu_max(theta'_2) < nu_min(theta'_1) fails");
      expect(nu_max(t2) <= nu_min(t1), where, "nu_max(theta_2) <= nu_min(theta_1) fails");
      expect(t2 == Bundle::canonicalize({{nu_min(b), rk_min(b)}}), where, "HN split is not at the minimal piece of b'");
    } else {
      expect(t1 == s1, where, "theta_1 != theta'_1");
      expect(kappa(s2) == kappa(t2) + 1, where, "kappa(theta'_2) = kappa(theta_2) + 1 fails");
      expect(nu_max(t2) < nu_min(t1), where, "nu_max(theta_2) < nu_min(theta_1) fails");
      expect(nu_max(s2) <= nu_min(s1), where, "nu_max(theta'_2) <= nu_min(theta'_1) fails");
      expect(t1 == Bundle::canonicalize({src.pieces().front()}), where, "omega-HN split is not at the maximal piece");
    }
    auto mu = [](std::int64_t m) {
      std::vector<Rational> v(static_cast<std::size_t>(m), Rational(0));
      v[0] = Rational(1);
      return v;
    };
    auto block = [&](const Bundle& s, const Bundle& t, bool carries) {
      return pairing(newton_point(t)) - (carries ? pairing(mu(s.rank())) : Rational(0)) - pairing(newton_point(s));
    };
    Rational shift = block(src, b, true) - block(t1, s1, hn) - block(t2, s2, !hn);
    expect(shift.is_integer(), where, "non-integral shift");
    expect_eq(ev["shift"], shift.num(), where, "shift");

    // Factor sets on the block carrying mu.
    std::vector<std::vector<std::size_t>> modified;
    if (!hn) {
      std::vector<std::size_t> m;
      for (std::size_t i = 0; i < L.r(); ++i)
        if (factor_slope(L, xi, i) != nu_max(src)) m.push_back(i);
      modified.push_back(m);
    } else {
      std::vector<std::size_t> low;
      for (std::size_t i = 0; i < L.r(); ++i)
        if (factor_slope(L, xi, i) == nu_min(src)) low.push_back(i);
      std::set<std::vector<std::size_t>> found;
      for (std::size_t mask = 0; mask < (std::size_t{1} << low.size()); ++mask) {
        std::int64_t rank = 0;
        std::set<std::size_t> away;
        for (std::size_t t = 0; t < low.size(); ++t)
          if (mask & (std::size_t{1} << t)) {
            away.insert(low[t]);
            rank += L.part(low[t]);
          }
        if (rank != t2.rank()) continue;
        std::vector<std::size_t> m;
        for (std::size_t i = 0; i < L.r(); ++i)
          if (!away.count(i)) m.push_back(i);
        found.insert(m);
      }
      modified.assign(found.begin(), found.end());
    }
    const Bundle& tj = hn ? t1 : t2;
    const Bundle& sj = hn ? s1 : s2;
    expect(ev["splits"].is_array() && ev["splits"].size() == modified.size(), where, "split list");
    std::vector<std::string> want_refs;
    auto add = [&](const std::string& k) {
      if (std::find(want_refs.begin(), want_refs.end(), k) == want_refs.end()) want_refs.push_back(k);
    };
    bool any = false;
    for (std::size_t s = 0; s < modified.size(); ++s) {
      const auto& m = modified[s];
      std::vector<std::int64_t> parts, src_chi, fac;
      std::optional<std::size_t> at;
      for (std::size_t t = 0; t < m.size(); ++t) {
        parts.push_back(L.part(m[t]));
        src_chi.push_back(xi[m[t]]);
        fac.push_back(static_cast<std::int64_t>(m[t] + 1));
        if (m[t] == c) at = t;
      }
      LeviDatum sub(parts);
      expect(b_of_chi(sub, Character(src_chi)).bundle == tj, where, "split does not realise the modified block");
      json ft = nullptr;
      bool match = false;
      if (at) {
        auto tgt_chi = Character(src_chi) + unit(sub.r(), *at);
        Bundle fb = b_of_chi(sub, tgt_chi).bundle;
        ft = enc(fb);
        match = fb == sj;
        add(claim_key(sub, Character(src_chi)));
        add(claim_key(sub, tgt_chi));
      }
      any = any || match;
      expect_eq(ev["splits"][s],
                json{{"factors", fac},
                     {"levi", parts},
                     {"source_chi", src_chi},
                     {"c_present", at.has_value()},
                     {"factor_target", ft},
                     {"match", match}},
                where, "split");
    }
    expect_eq(ev["outcome"], any ? "target" : "vanishes", where, "outcome");
    expect(!any || b == target, where, "a non-target stratum survives");
    expect(any || !(b == target), where, "the target stratum vanishes");
    const json& ch = n["children"];
    expect(ch.size() == want_refs.size(), where, "transport premises");
    for (std::size_t i = 0; i < want_refs.size(); ++i) expect_ref(ch[i], want_refs[i], ctx, where);
    return any;
  }

  // Per exceptional member: the chosen c and witness for condition (4) or (4'), or the axiom.
  struct MemberPlan {
    json closure;
    std::vector<json> xis;
    std::vector<json> axioms;
    std::vector<std::string> rec, ih;
  };

  std::optional<MemberPlan> plan_member(const Ctx& ctx, const Bundle& s, const Bundle& target, bool primed) {
    const auto& L = ctx.L;
    const auto& chi = ctx.chi;
    MemberPlan p;
    auto closure = primed ? not_leq(target, s) : not_leq(s, target);
    if (!closure) return std::nullopt;
    p.closure = *closure;
    for (const auto& xi : characters_of(L, s)) {
      std::optional<json> entry;
      for (std::size_t c = 0; c < L.r() && !entry; ++c) {
        if (chi[c] <= 0 || xi[c] <= 0) continue;
        Character a = chi - unit(L.r(), c), b = xi - unit(L.r(), c);
        Bundle x = b_of_chi(L, a).bundle, y = b_of_chi(L, b).bundle;
        std::optional<json> w = x == y ? std::optional<json>(json{{"kind", "equal"}})
                                       : (primed ? not_leq(x, y) : not_leq(y, x));
        if (w) {
          entry = json{{"xi", xi.values()}, {"c", c + 1}, {"witness", *w}};
          p.ih.push_back(claim_key(L, a));
          p.ih.push_back(claim_key(L, b));
        }
      }
      for (std::size_t c = 0; c < L.r() && !entry && primed; ++c) {
        if (chi[c] <= 0 || xi[c] <= 0) continue;
        Character a = chi - unit(L.r(), c), b = xi - unit(L.r(), c);
        bool units = L.r() == 2 && a.total() == 1 && b.total() == 1 && a.is_nonnegative() && b.is_nonnegative() &&
                     !(a == b);
        if (!units) continue;
        entry = json{{"xi", xi.values()}, {"c", c + 1}, {"witness", "axiom"}};
        p.axioms.push_back({{"rule", "Axiom11Case"},
                            {"evidence", {{"axiom", true}, {"c", c + 1}, {"from", a.values()}, {"to", b.values()}}},
                            {"children", json::array()}});
        p.ih.push_back(claim_key(L, a));
        p.ih.push_back(claim_key(L, b));
      }
      if (!entry) return std::nullopt;
      p.rec.push_back(claim_key(L, xi));
      p.xis.push_back(*entry);
    }
    return p;
  }

  void verify_exceptional(const json& n, Ctx& ctx, const std::vector<Bundle>& S, const Bundle& target) {
    const auto where = ctx.key + " exceptional set";
    expect_node(n, "ExceptionalSet", where);
    const json& ev = n["evidence"];
    expect_keys(ev, {"variant", "members"}, where);
    expect(ev["variant"] == "2/4" || ev["variant"] == "2'/4'", where, "unknown variant");
    bool primed = ev["variant"] == "2'/4'";
    if (primed) {
      bool unprimed_ok = true;
      for (const auto& s : S) unprimed_ok = unprimed_ok && plan_member(ctx, s, target, false).has_value();
      expect(!unprimed_ok, where, "primed variant used although (2)/(4) hold");
    }
    expect(ev["members"].is_array() && ev["members"].size() == S.size(), where, "member list");
    std::vector<std::string> rec, ih;
    std::vector<json> axioms;
    auto add = [](std::vector<std::string>& v, const std::string& k) {
      if (std::find(v.begin(), v.end(), k) == v.end()) v.push_back(k);
    };
    for (std::size_t i = 0; i < S.size(); ++i) {
      const auto& s = S[i];
      const json& m = ev["members"][i];
      const std::string at = where + " member " + to_string(s);
      expect_keys(m, {"bundle", "nu_min", "closure", "xis"}, at);
      expect_eq(m["bundle"], enc(s), at, "bundle");
      expect_eq(m["nu_min"], enc(nu_min(s)), at, "nu_min");
      expect(nu_min(s) >= Rational(0), at, "condition (1): negative minimal slope");
      if (primed)
        verify_witness(m["closure"], target, s, at + " (2')");
      else
        verify_witness(m["closure"], s, target, at + " (2)");
      auto plan = plan_member(ctx, s, target, primed);
      expect(plan.has_value(), at, "conditions (4) fail");
      expect(m["xis"].is_array() && m["xis"].size() == plan->xis.size(), at, "characters of the member");
      for (std::size_t k = 0; k < plan->xis.size(); ++k) {
        const json& got = m["xis"][k];
        expect_eq(got, plan->xis[k], at, "condition (4) entry");
        if (got["witness"].is_object() && got["witness"]["kind"] != "equal") {
          auto xi = Character(as_ints(got["xi"], at));
          auto c = static_cast<std::size_t>(as_int(got["c"], at) - 1);
          Bundle x = b_of_chi(ctx.L, ctx.chi - unit(ctx.L.r(), c)).bundle;
          Bundle y = b_of_chi(ctx.L, xi - unit(ctx.L.r(), c)).bundle;
          if (primed)
            verify_witness(got["witness"], x, y, at + " (4')");
          else
            verify_witness(got["witness"], y, x, at + " (4)");
        }
      }
      for (const auto& k : plan->rec) add(rec, k);
      for (const auto& k : plan->ih) add(ih, k);
      for (const auto& a : plan->axioms) axioms.push_back(a);
    }
    const json& ch = n["children"];
    expect(ch.size() == rec.size() + ih.size() + axioms.size(), where, "premises of the exceptional set");
    std::size_t p = 0;
    for (const auto& k : rec) expect_ref(ch[p++], k, ctx, where + " (3)");
    for (const auto& k : ih) expect_ref(ch[p++], k, ctx, where + " induction");
    for (const auto& a : axioms) {
      expect_node(ch[p], "Axiom11Case", where);
      expect(ctx.L.r() == 2, where, "Axiom11Case outside rank-two Levi");
      expect_eq(ch[p], a, where, "Axiom11Case");
      ++p;
    }
  }

  std::map<std::string, const json*> entries_;
  std::set<std::string> referenced_;
  std::map<std::string, std::string> verified_;
};

inline CheckResult check_trace(const json& trace) {
  TraceChecker c;
  return c.check(trace);
}

}  // namespace ffhecke::check
