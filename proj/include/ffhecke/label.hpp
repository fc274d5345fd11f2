#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "ffhecke/levi.hpp"

namespace ffhecke {

// A bundle together with the factors sitting on each of its pieces (0-based, sorted).
// The Zero label stands for a vanishing stalk.
class CategoryLabel {
 public:
  static CategoryLabel zero() { return CategoryLabel(); }

  bool is_zero() const { return !bundle_.has_value(); }
  const Bundle& bundle() const {
    if (!bundle_) throw Error(ErrorCode::InvalidInput, "Zero label has no bundle");
    return *bundle_;
  }
  const std::vector<std::vector<std::size_t>>& assignment() const { return assignment_; }

  friend bool operator==(const CategoryLabel&, const CategoryLabel&) = default;

 private:
  CategoryLabel() = default;
  CategoryLabel(Bundle b, std::vector<std::vector<std::size_t>> a) : bundle_(std::move(b)), assignment_(std::move(a)) {}

  std::optional<Bundle> bundle_;
  std::vector<std::vector<std::size_t>> assignment_;

  friend CategoryLabel make_label(const LeviDatum&, const Bundle&, std::vector<std::vector<std::size_t>>);
};

// Validates that the assigned parts tile the pieces of b.
inline CategoryLabel make_label(const LeviDatum& L, const Bundle& b, std::vector<std::vector<std::size_t>> assignment) {
  if (assignment.size() != b.size()) throw Error(ErrorCode::RankMismatch, "assignment must list every piece");
  std::vector<bool> used(L.r(), false);
  for (std::size_t j = 0; j < b.size(); ++j) {
    auto& group = assignment[j];
    std::sort(group.begin(), group.end());
    std::int64_t rank = 0;
    for (auto i : group) {
      if (i >= L.r() || used[i]) throw Error(ErrorCode::RankMismatch, "factor index out of range or repeated");
      used[i] = true;
      rank = checked::add(rank, L.part(i));
      if (!(b.pieces()[j].slope * Rational(L.part(i))).is_integer())
        throw Error(ErrorCode::RankMismatch, "factor rank incompatible with piece slope");
    }
    if (rank != b.pieces()[j].rank) throw Error(ErrorCode::RankMismatch, "assigned ranks do not tile the piece");
  }
  for (bool u : used)
    if (!u) throw Error(ErrorCode::RankMismatch, "some factor is unassigned");
  return CategoryLabel(b, std::move(assignment));
}

// Label from per-factor degrees a_i, grouped by the ascending order w.
inline CategoryLabel category_label(const LeviDatum& L, const Character& degrees, const Bundle& b, const Permutation& w) {
  require_length(L, degrees);
  if (w.one_line().size() != L.r()) throw Error(ErrorCode::LengthMismatch, "permutation length");
  for (std::size_t k = 1; k < L.r(); ++k)
    if (factor_slope(L, degrees, w(k) - 1) > factor_slope(L, degrees, w(k + 1) - 1))
      throw Error(ErrorCode::InvalidInput, "w does not sort slopes ascending");
  std::vector<std::vector<std::size_t>> a(b.size());
  for (std::size_t k = 1; k <= L.r(); ++k) {
    std::size_t i = w(k) - 1;
    Rational s = factor_slope(L, degrees, i);
    auto it = std::find_if(b.pieces().begin(), b.pieces().end(), [&](const IsoclinicPiece& p) { return p.slope == s; });
    if (it == b.pieces().end()) throw Error(ErrorCode::RankMismatch, "factor slope not present in bundle");
    a[static_cast<std::size_t>(it - b.pieces().begin())].push_back(i);
  }
  return make_label(L, b, std::move(a));
}

inline CategoryLabel label_of_degrees(const LeviDatum& L, const Character& degrees) {
  auto bw = b_of_chi(L, degrees);
  return category_label(L, degrees, bw.bundle, bw.w);
}

// Inverse of label_of_degrees: a_i = n_i * slope of the piece holding factor i.
inline Character factor_degrees(const LeviDatum& L, const CategoryLabel& label) {
  std::vector<std::int64_t> a(L.r(), 0);
  const auto& b = label.bundle();
  for (std::size_t j = 0; j < b.size(); ++j)
    for (auto i : label.assignment()[j]) a[i] = (b.pieces()[j].slope * Rational(L.part(i))).num();
  return Character(a);
}

// All labels carried by b; empty when b is not in B(G)_L.
inline std::vector<CategoryLabel> labels_of_bundle(const LeviDatum& L, const Bundle& b) {
  std::vector<CategoryLabel> out;
  for (const auto& chi : characters_of(L, b)) {
    auto l = label_of_degrees(L, chi);
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  }
  return out;
}

}  // namespace ffhecke
