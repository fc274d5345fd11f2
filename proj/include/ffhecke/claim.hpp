#pragma once

#include <cstdint>
#include <vector>

#include "ffhecke/hecke.hpp"

namespace ffhecke {

// Termination measure of a claim, compared lexicographically:
// (n, chi not >= 0, |chi|, chi has a zero entry, n_min(chi)).
// n_min is the smallest n_c among factors of minimal slope; it drives the induction for
// characters without zero entries.
inline std::vector<std::int64_t> claim_measure(const LeviDatum& L, const Character& chi) {
  require_length(L, chi);
  if (!chi.is_nonnegative()) return {L.n(), 1, 0, 0, 0};
  std::int64_t has_zero = 0;
  for (auto x : chi.values())
    if (x == 0) has_zero = 1;
  Rational low = factor_slope(L, chi, 0);
  for (std::size_t i = 0; i < L.r(); ++i) low = std::min(low, factor_slope(L, chi, i));
  std::int64_t nmin = L.n();
  for (std::size_t i = 0; i < L.r(); ++i)
    if (factor_slope(L, chi, i) == low) nmin = std::min(nmin, L.part(i));
  return {L.n(), 0, chi.total(), has_zero, nmin};
}

}  // namespace ffhecke
