// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "ffhecke/ffhecke.hpp"
#include "mutate.hpp"

using namespace ffhecke;
using json = nlohmann::json;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first few problems and a summary.
class Tally {
 public:
  void fail(const std::string& what) {
    ++failures_;
    if (failures_ <= 3) msg_ << (failures_ > 1 ? "; " : "") << what;
  }
  void note(const std::string& s) { note_ = s; }
  Outcome done() const {
    if (failures_ == 0) return {true, note_};
    std::ostringstream s;
    s << failures_ << " failure(s): " << msg_.str();
    return {false, s.str()};
  }

 private:
  std::size_t failures_ = 0;
  std::ostringstream msg_;
  std::string note_;
};

Bundle b_chi(std::vector<std::int64_t> L, std::vector<std::int64_t> chi) {
  return b_of_chi(LeviDatum(std::move(L)), Character(std::move(chi))).bundle;
}

std::vector<Bundle> bundles_in(std::int64_t max_rank, const Rational& lo, const Rational& hi) {
  std::vector<Bundle> out;
  for (std::int64_t n = 1; n <= max_rank; ++n)
    for (std::int64_t d = (lo * Rational(n)).ceil(); d <= (hi * Rational(n)).floor(); ++d)
      for (auto& b : enumerate_bundles(n, d, lo, hi)) out.push_back(std::move(b));
  return out;
}

// Shared state: pairs from criteria 4-6 and traces from 7 feed criterion 10.
struct Pairs {
  std::vector<std::pair<Bundle, Bundle>> all;
};

std::size_t shifts_checked = 0;
std::vector<std::string> shift_errors;

void transport_or_record(const ReductionDatum& d, const std::string& where) {
  try {
    (void)reduction_transport(d);
    ++shifts_checked;
  } catch (const Error& e) {
    shift_errors.push_back(where + ": " + e.what());
  }
}

Outcome figures() {
  Tally t;
  auto f2 = classify_reducibility(b_chi({2, 3, 3}, {2, 2, 1}), b_chi({2, 3, 3}, {1, 2, 3}));
  if (!f2 || f2->kind != ReductionKind::OmegaHN || f2->m1 != 2 || f2->m2 != 6)
    t.fail("GL_2 x GL_6 omega-HN split not found");
  auto s3 = b_chi({3, 4}, {2, 1}), t3 = b_chi({3, 4}, {1, 3});
  if (!exists_mod(s3, t3, ModType::Std)) t.fail("third figure pair is not a modification");
  if (classify_reducibility(s3, t3)) t.fail("third figure pair classified as reducible");
  auto nu = newton_point(b_chi({2, 3, 3}, {2, 2, 1}));
  std::vector<Rational> want{1, 1, Rational(2, 3), Rational(2, 3), Rational(2, 3), Rational(1, 3), Rational(1, 3),
                             Rational(1, 3)};
  if (nu != want) t.fail("first figure polygon has the wrong slopes");
  return t.done();
}

Outcome shift_anchor() {
  Tally t;
  for (std::int64_t n = 1; n <= 8; ++n) {
    if (two_rho_pairing(mu_std(n)) != Rational(n - 1)) t.fail("n=" + std::to_string(n));
    auto lt = lubin_tate_normalization(n);
    if (lt.shift != 1 - n || lt.twist != Rational(1 - n, 2)) t.fail("normalisation at n=" + std::to_string(n));
  }
  return t.done();
}

Outcome basic_sources() {
  Tally t;
  std::size_t count = 0;
  for (std::int64_t n = 1; n <= 6; ++n)
    for (std::int64_t d = -6; d <= 6; ++d) {
      auto b = Bundle::canonicalize({{Rational(d, n), n}});
      ++count;
      if (reach_over(b) != basic_reach_exact(b)) t.fail(to_string(b));
    }
  t.note(std::to_string(count) + " semistable sources");
  return t.done();
}

Outcome monotonicity(Pairs& pairs) {
  Tally t;
  for (const auto& b : bundles_in(5, Rational(-3), Rational(3)))
    for (const auto& c : reach_over(b)) {
      if (!exists_mod(b, c, ModType::Std)) t.fail("reach_over returned a non-modification");
      if (nu_min(c) < nu_min(b) || nu_max(c) < nu_max(b)) t.fail(to_string(b) + " -> " + to_string(c));
      pairs.all.emplace_back(b, c);
    }
  t.note(std::to_string(pairs.all.size()) + " pairs");
  return t.done();
}

Outcome reducibility(const Pairs& pairs) {
  Tally t;
  std::size_t hn = 0, ohn = 0;
  for (const auto& [b, c] : pairs.all) {
    bool want_hn = nu_min(b) == nu_min(c), want_ohn = nu_max(b) == nu_max(c);
    bool got_hn = !all_reductions(b, c, ReductionKind::HN).empty();
    bool got_ohn = !all_reductions(b, c, ReductionKind::OmegaHN).empty();
    auto d = classify_reducibility(b, c);
    if (got_hn != want_hn || got_ohn != want_ohn || d.has_value() != (want_hn || want_ohn))
      t.fail(to_string(b) + " -> " + to_string(c));
    if (d) {
      if (!datum_violation(*d, b, c).empty()) t.fail("datum " + to_string(b) + " -> " + to_string(c));
      transport_or_record(*d, to_string(b) + " -> " + to_string(c));
    }
    hn += got_hn;
    ohn += got_ohn;
  }
  t.note(std::to_string(hn) + " HN, " + std::to_string(ohn) + " omega-HN");
  return t.done();
}

Outcome all_reducible(const Pairs& pairs) {
  Tally t;
  std::size_t sources = 0, checked = 0;
  const Bundle* last = nullptr;
  for (const auto& [b, c] : pairs.all) {
    if (is_semistable(b) || b.rank() > 5) continue;
    const auto& p = b.pieces();
    Rational rest_min = p[p.size() - 2].slope;
    Rational bound(checked::add(deg_min(b), 1), rk_min(b));
    if (rest_min < bound) continue;
    if (!last || !(*last == b)) ++sources;
    last = &b;
    ++checked;
    if (!classify_reducibility(b, c) && !(rk_min(c) < rk_min(b))) t.fail(to_string(b) + " -> " + to_string(c));
  }
  t.note(std::to_string(sources) + " sources, " + std::to_string(checked) + " modifications");
  if (checked == 0) t.fail("no qualifying source");
  return t.done();
}

std::size_t count_shifts(const json& trace) {
  std::size_t n = 0;
  std::vector<const json*> stack;
  for (const auto& c : trace["claims"]) stack.push_back(&c["node"]);
  while (!stack.empty()) {
    const json* x = stack.back();
    stack.pop_back();
    if (x->contains("rule") && (*x)["rule"] == "ReduceViaHN") {
      if (!(*x)["evidence"]["shift"].is_number_integer()) shift_errors.push_back("trace shift not an integer");
      ++n;
    }
    if (x->contains("children"))
      for (const auto& c : (*x)["children"]) stack.push_back(&c);
  }
  return n;
}

Outcome sweep_all(cert::Certifier& certifier, check::TraceChecker& checker, std::vector<json>& keep) {
  Tally t;
  std::size_t certified = 0, retries = 0;
  auto certify_one = [&](const LeviDatum& L, const Character& chi) {
    auto v = certifier.certify(L, chi);
    if (!v.certified()) {
      t.fail(claim_key(L, chi) + " " + cert::to_string(v.kind) + ": " + v.reason);
      return;
    }
    if (!v.log.empty()) ++retries;
    auto j = v.trace.to_json();
    auto r = checker.check(j);
    if (!r.ok) {
      t.fail(claim_key(L, chi) + " rejected: " + r.failure);
      return;
    }
    shifts_checked += count_shifts(j);
    ++certified;
    if (keep.size() < 64 && j["claims"].size() > 6) keep.push_back(std::move(j));
  };
  for (const auto& [L, chi] : sweep_instances(8, 4)) certify_one(L, chi);
  std::mt19937 rng(20241015);
  auto comps = std::vector<std::vector<std::int64_t>>{};
  for (std::int64_t n = 1; n <= 8; ++n)
    for (auto& c : compositions(n)) comps.push_back(c);
  std::uniform_int_distribution<std::int64_t> val(-3, 2);
  std::size_t negatives = 0;
  while (negatives < 200) {
    LeviDatum L(comps[rng() % comps.size()]);
    std::vector<std::int64_t> v;
    for (std::size_t i = 0; i < L.r(); ++i) v.push_back(val(rng));
    Character chi(v);
    if (chi.is_nonnegative()) continue;
    ++negatives;
    auto dn = det_normalize(chi, L);
    if (!dn.chi.is_nonnegative() || dn.chi != chi + Character::det(L).scaled(dn.det_power))
      t.fail("det_normalize " + claim_key(L, chi));
    certify_one(L, chi);
  }
  certify_one(LeviDatum({2, 3, 3}), Character({2, 2, 2}));
  certify_one(LeviDatum({3, 4}), Character({2, 2}));
  t.note(std::to_string(certified) + " certified and checked, " + std::to_string(retries) + " tie-break retries");
  return t.done();
}

Outcome stalk_algebra() {
  Tally t;
  std::mt19937 rng(8);
  std::vector<std::vector<std::int64_t>> comps;
  for (std::int64_t n = 1; n <= 8; ++n)
    for (auto& c : compositions(n)) comps.push_back(c);
  std::uniform_int_distribution<std::int64_t> val(-4, 4);
  for (int i = 0; i < 1000; ++i) {
    LeviDatum L(comps[rng() % comps.size()]);
    auto phi = ParameterDatum::generic(L);
    std::vector<std::int64_t> a, b, s;
    for (std::size_t k = 0; k < L.r(); ++k) a.push_back(val(rng)), b.push_back(val(rng)), s.push_back(val(rng));
    Character chi(a), chi2(b);
    auto src = label_of_degrees(L, Character(s));
    try {
      auto direct = stalk(phi, chi + chi2, src);
      auto first = stalk(phi, chi, src);
      auto chained = stalk(phi, chi2, first.target);
      if (!(direct.target == chained.target)) t.fail("composition at " + claim_key(L, chi));
      if (kappa(first.target.bundle()) - kappa(src.bundle()) != chi.total()) t.fail("kappa at " + claim_key(L, chi));
      auto back = stalk(phi, -chi, first.target);
      if (!(back.target == src) || !back.is_equivalence || !first.is_equivalence)
        t.fail("round trip at " + claim_key(L, chi));
    } catch (const Error& e) {
      t.fail(claim_key(L, chi) + ": " + e.what());
    }
  }
  return t.done();
}

Outcome robustness(const std::vector<json>& traces) {
  Tally t;
  if (traces.empty()) {
    t.fail("no traces to mutate");
    return t.done();
  }
  std::mt19937 rng(99);
  // A fresh checker per mutation keeps the memo from the sweep out of the picture.
  for (int i = 0; i < 100; ++i) {
    const auto& base = traces[rng() % traces.size()];
    auto m = mutate::one_leaf(base, rng);
    if (check::check_trace(m.trace).ok) t.fail("accepted mutation at " + m.where);
  }
  return t.done();
}

Outcome integrality() {
  Tally t;
  for (const auto& e : shift_errors) t.fail(e);
  if (shifts_checked == 0) t.fail("no reducible pairs seen");
  t.note(std::to_string(shifts_checked) + " shifts");
  return t.done();
}

}  // namespace

int main() {
  bool all = true;
  auto report = [&](int n, const char* name, const std::function<Outcome()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.ok;
    std::printf("[%s] %2d %s (%.1fs)%s%s\n", o.ok ? "PASS" : "FAIL", n, name, secs, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
    std::fflush(stdout);
  };

  Pairs pairs;
  cert::Certifier certifier;
  check::TraceChecker checker;
  std::vector<json> traces;
  report(1, "figure fixtures", figures);
  report(2, "Lubin-Tate shift anchor", shift_anchor);
  report(3, "semistable sources reach exactly", basic_sources);
  report(4, "modifications raise nu_min and nu_max", [&] { return monotonicity(pairs); });
  report(5, "reducibility matches slope equalities", [&] { return reducibility(pairs); });
  report(6, "reducible or smaller rk_min", [&] { return all_reducible(pairs); });
  report(7, "certification sweep", [&] { return sweep_all(certifier, checker, traces); });
  report(8, "stalk algebra coherence", stalk_algebra);
  report(9, "trace mutations rejected", [&] { return robustness(traces); });
  report(10, "shift ledger integrality", integrality);
  return all ? 0 : 1;
}
