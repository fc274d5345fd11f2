#pragma once

#include <array>

#include <catch_amalgamated.hpp>

#include "ffhecke/ffhecke.hpp"

namespace th {

using ffhecke::Bundle;
using ffhecke::Character;
using ffhecke::LeviDatum;
using ffhecke::Rational;

inline Rational q(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

// Pieces as (num, den, rank).
inline Bundle bundle(std::initializer_list<std::array<std::int64_t, 3>> ps) {
  std::vector<ffhecke::IsoclinicPiece> v;
  for (const auto& p : ps) v.push_back({Rational(p[0], p[1]), p[2]});
  return Bundle::canonicalize(v);
}

inline Bundle b_chi(std::vector<std::int64_t> L, std::vector<std::int64_t> chi) {
  return ffhecke::b_of_chi(LeviDatum(std::move(L)), Character(std::move(chi))).bundle;
}

template <class F>
ffhecke::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const ffhecke::Error& e) {
    return e.code();
  }
  FAIL("expected an ffhecke::Error");
  return ffhecke::ErrorCode::InvalidInput;
}

}  // namespace th
