#include <random>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace ffhecke;
using th::b_chi;
using th::bundle;
using th::q;

TEST_CASE("stalk on the worked examples") {
  LeviDatum L({2, 3, 3});
  auto phi = ParameterDatum::generic(L);
  auto r = stalk(phi, Character({2, 2, 2}), trivial_label(L));
  REQUIRE_FALSE(r.is_zero());
  CHECK(r.is_equivalence);
  CHECK(r.target.bundle() == bundle({{1, 1, 2}, {2, 3, 6}}));
  CHECK(r.target.assignment() == std::vector<std::vector<std::size_t>>{{0}, {1, 2}});
  CHECK(r.evidence == "L=2,3,3;chi=2,2,2");
  CHECK(r.shift_ledger == renormalisation_shift(Bundle::trivial(8), r.target.bundle()));

  LeviDatum M({3, 4});
  auto psi = ParameterDatum::generic(M);
  auto probe = b_chi({3, 4}, {1, 3});
  CHECK(stalk_at(psi, Character({2, 2}), trivial_label(M), probe).is_zero());
  auto hit = stalk_at(psi, Character({2, 2}), trivial_label(M), b_chi({3, 4}, {2, 2}));
  CHECK_FALSE(hit.is_zero());
}

TEST_CASE("stalk from a bare bundle") {
  LeviDatum L({2, 3});
  auto phi = ParameterDatum::generic(L);
  CHECK(stalk(phi, Character({1, 0}), Bundle::stable(1, 5)).is_zero());
  auto r = stalk(phi, Character({1, 0}), bundle({{1, 2, 2}, {1, 3, 3}}));
  CHECK(r.target.bundle() == bundle({{1, 1, 2}, {1, 3, 3}}));
  LeviDatum E({2, 2});
  CHECK(th::code_of([&] { stalk(ParameterDatum::generic(E), Character({1, 0}), bundle({{1, 2, 2}, {0, 1, 2}})); }) ==
        ErrorCode::InvalidParameter);
}

TEST_CASE("parameter validity") {
  LeviDatum L({1, 2});
  CHECK(th::code_of([&] { ParameterDatum(L, {"a", "a"}); }) == ErrorCode::InvalidParameter);
  CHECK(th::code_of([&] { ParameterDatum(L, {"a"}); }) == ErrorCode::LengthMismatch);
  ParameterDatum bad(L, {"a", "b"}, false);
  CHECK(th::code_of([&] { stalk(bad, Character({1, 0}), trivial_label(L)); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("decompose_std") {
  auto comps = decompose_std(ParameterDatum::generic(LeviDatum({2, 3, 3})));
  REQUIRE(comps.size() == 3);
  CHECK(comps[1].chi == Character({0, 1, 0}));
  CHECK(comps[1].multiplicity == 3);
  CHECK(comps[2].factor == "phi3");
  std::int64_t total = 0;
  for (const auto& c : comps) total += c.multiplicity;
  CHECK(total == 8);
}

TEST_CASE("factor_chi peels the minimal slope factor first") {
  auto a = factor_chi(LeviDatum({2, 3, 3}), Character({2, 2, 2}));
  REQUIRE(a.size() == 6);
  CHECK(a.back() == 2);
  auto b = factor_chi(LeviDatum({3, 4}), Character({2, 2}));
  CHECK(b.back() == 1);
  CHECK(minimal_positive_factors(LeviDatum({1, 2}), Character({1, 2})) == std::vector<std::size_t>{0, 1});
  CHECK(th::code_of([] { factor_chi(LeviDatum({1, 2}), Character({-1, 2})); }) == ErrorCode::NegativeCharacter);
  for (auto parts : std::vector<std::vector<std::int64_t>>{{1, 2, 3}, {2, 2}, {4, 1}})
    for (const auto& chi : characters_up_to(parts.size(), 5)) {
      auto f = factor_chi(LeviDatum(parts), chi);
      std::vector<std::int64_t> count(parts.size(), 0);
      for (auto c : f) ++count[c];
      CHECK(count == chi.values());
    }
}

TEST_CASE("det_normalize matches counting up") {
  LeviDatum L({3, 4});
  auto a = det_normalize(Character({-2, -1}), L);
  CHECK(a.det_power == 1);
  CHECK(a.chi == Character({1, 3}));
  auto b = det_normalize(Character({-6, -8}), L);
  CHECK(b.det_power == 2);
  CHECK(b.chi == Character({0, 0}));
  CHECK(det_normalize(Character({1, 0}), L).det_power == 0);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::int64_t> part(1, 4), val(-12, 6);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::int64_t> parts{part(rng), part(rng), part(rng)}, chi{val(rng), val(rng), val(rng)};
    auto d = det_normalize(Character(chi), LeviDatum(parts));
    CHECK(d.det_power == oracle::det_power(parts, chi));
    CHECK(d.chi.is_nonnegative());
  }
}

TEST_CASE("stalk algebra on random inputs") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::int64_t> val(-3, 3);
  auto comps = compositions(6);
  for (int i = 0; i < 300; ++i) {
    LeviDatum L(comps[rng() % comps.size()]);
    auto phi = ParameterDatum::generic(L);
    std::vector<std::int64_t> a, b, s;
    for (std::size_t k = 0; k < L.r(); ++k) a.push_back(val(rng)), b.push_back(val(rng)), s.push_back(val(rng));
    auto src = label_of_degrees(L, Character(s));
    auto c = compose(phi, Character(a), Character(b), src);
    CHECK(c.target == stalk(phi, Character(a) + Character(b), src).target);
    auto r = stalk(phi, Character(a), src);
    CHECK(kappa(r.target.bundle()) - kappa(src.bundle()) == Character(a).total());
    auto back = stalk(phi, -Character(a), r.target);
    CHECK(back.target == src);
    CHECK(back.is_equivalence);
    CHECK(back.shift_ledger == -r.shift_ledger);
  }
}

TEST_CASE("expand and evaluate") {
  LeviDatum L({1, 2});
  auto phi = ParameterDatum::generic(L);
  OperatorExpr e{Generator::t_std(), Generator::shift_by(-1), Generator::twist_by(q(-1, 2))};
  auto terms = expand(phi, e);
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].chi == Character({1, 0}));
  CHECK(terms[0].multiplicity == 1);
  CHECK(terms[1].chi == Character({0, 1}));
  CHECK(terms[1].multiplicity == 2);
  CHECK(terms[1].markers == std::vector<std::size_t>{1});
  CHECK(terms[1].shift == -1);
  CHECK(terms[1].twist == q(-1, 2));
  auto dd = expand(phi, {Generator::t_std(), Generator::t_std_dual()});
  CHECK(dd.size() == 4);
  CHECK(std::count_if(dd.begin(), dd.end(), [](const Term& t) { return t.chi == Character({0, 0}); }) == 2);
  CHECK(expand(phi, {Generator::t_det()})[0].chi == Character({1, 2}));
  CHECK(th::code_of([] { Generator::twist_by(q(1, 3)); }) == ErrorCode::InvalidInput);
  auto ev = evaluate(phi, e, trivial_label(L));
  REQUIRE(ev.size() == 2);
  CHECK(ev[0].stalk.target.bundle() == bundle({{1, 1, 1}, {0, 1, 2}}));
  CHECK(ev[1].stalk.target.bundle() == bundle({{1, 2, 2}, {0, 1, 1}}));
}

TEST_CASE("Lubin-Tate normalisation is [1-n]((1-n)/2)") {
  for (std::int64_t n = 1; n <= 8; ++n) {
    auto st = lubin_tate_normalization(n);
    CHECK(st.shift == 1 - n);
    CHECK(st.twist == q(1 - n, 2));
  }
}
