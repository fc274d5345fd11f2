#include "helpers.hpp"
#include "oracles.hpp"

using namespace ffhecke;
using th::b_chi;
using th::bundle;
using th::q;

TEST_CASE("character operations") {
  Character a({2, 2, 2}), c({0, 0, 1});
  CHECK((a - c) == Character({2, 2, 1}));
  CHECK(Character({2, 2, 1}).total() == 5);
  CHECK(Character::det(LeviDatum({2, 3, 3})) == Character({2, 3, 3}));
  CHECK(a.dominates(c));
  CHECK_FALSE(c.dominates(a));
  CHECK(th::code_of([] { (void)(Character({1}) + Character({1, 2})); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("b_of_chi on the worked examples") {
  LeviDatum L({2, 3, 3});
  auto r = b_of_chi(L, Character({2, 2, 1}));
  REQUIRE(r.bundle.size() == 3);
  CHECK(r.bundle.pieces()[0].slope == q(1));
  CHECK(r.bundle.pieces()[1].slope == q(2, 3));
  CHECK(r.bundle.pieces()[2].slope == q(1, 3));
  CHECK(r.bundle.pieces()[0].rank == 2);
  CHECK(r.bundle.pieces()[1].rank == 3);
  CHECK(r.bundle.pieces()[2].rank == 3);
  // Ascending convention: slopes 1 > 2/3 > 1/3 listed as factors 3, 2, 1.
  CHECK(r.w == Permutation({3, 2, 1}));
  auto z = b_of_chi(L, Character({0, 0, 0}));
  CHECK(z.bundle == Bundle::trivial(8));
  CHECK(z.w == Permutation::identity(3));
  auto m = b_of_chi(L, Character({1, 3, 0}));
  CHECK(m.bundle == bundle({{1, 1, 3}, {1, 2, 2}, {0, 1, 3}}));
  CHECK(m.w == Permutation({3, 1, 2}));
}

TEST_CASE("kappa and twisting through b_of_chi") {
  for (auto parts : std::vector<std::vector<std::int64_t>>{{1, 2}, {2, 3, 1}, {3, 4}, {2, 2, 2}}) {
    LeviDatum L(parts);
    for (const auto& chi : characters_up_to(L.r(), 4)) {
      auto b = b_of_chi(L, chi).bundle;
      CHECK(kappa(b) == chi.total());
      CHECK(b_of_chi(L, chi + Character::det(L).scaled(2)).bundle == twist(b, 2));
      auto reps = in_BGL(L, b);
      CHECK(std::find(reps.begin(), reps.end(), symmetry_representative(L, chi)) != reps.end());
    }
  }
}

TEST_CASE("b_of_chi is invariant under permuting parts and chi together") {
  std::vector<std::int64_t> parts{1, 2, 3}, chi{2, -1, 4};
  std::vector<std::size_t> idx{0, 1, 2};
  auto base = b_chi(parts, chi);
  do {
    std::vector<std::int64_t> p2, c2;
    for (auto i : idx) p2.push_back(parts[i]), c2.push_back(chi[i]);
    CHECK(b_chi(p2, c2) == base);
  } while (std::next_permutation(idx.begin(), idx.end()));
}

TEST_CASE("membership in B(G)_L") {
  CHECK(in_BGL(LeviDatum({2, 3}), bundle({{1, 2, 2}, {1, 3, 3}})) == std::vector<Character>{Character({1, 1})});
  CHECK(in_BGL(LeviDatum({2, 3}), Bundle::stable(1, 5)).empty());
  CHECK(in_BGL(LeviDatum({2, 2}), bundle({{1, 2, 4}})) == std::vector<Character>{Character({1, 1})});
}

TEST_CASE("characters_of agrees with a box search") {
  for (auto parts : std::vector<std::vector<std::int64_t>>{{2, 3}, {1, 2, 2}, {2, 2}, {1, 1, 2}}) {
    LeviDatum L(parts);
    std::int64_t n = L.n();
    for (std::int64_t d = -2; d <= 3; ++d)
      for (const auto& b : enumerate_bundles(n, d, q(-1), q(1))) {
        auto got = characters_of(L, b);
        auto want = oracle::characters_by_search(parts, b);
        std::vector<std::vector<std::int64_t>> g;
        for (const auto& c : got) g.push_back(c.values());
        std::sort(want.begin(), want.end());
        CHECK(g == want);
      }
  }
}

TEST_CASE("category labels") {
  LeviDatum L({2, 3, 3});
  auto l = label_of_degrees(L, Character({2, 2, 2}));
  REQUIRE(l.assignment().size() == 2);
  CHECK(l.assignment()[0] == std::vector<std::size_t>{0});
  CHECK(l.assignment()[1] == std::vector<std::size_t>{1, 2});
  auto t = label_of_degrees(L, Character({0, 0, 0}));
  CHECK(t.assignment() == std::vector<std::vector<std::size_t>>{{0, 1, 2}});
  // Either order of the tied factors gives the same label.
  auto b = b_chi({2, 3, 3}, {2, 2, 2});
  CHECK(category_label(L, Character({2, 2, 2}), b, Permutation({2, 3, 1})) ==
        category_label(L, Character({2, 2, 2}), b, Permutation({3, 2, 1})));
  CHECK(th::code_of([&] { make_label(L, b, {{0}, {1}}); }) == ErrorCode::RankMismatch);
  CHECK(factor_degrees(L, l) == Character({2, 2, 2}));
}
