#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "ffhecke/hecke.hpp"
#include "ffhecke/modifications.hpp"

namespace ffhecke::io {

using json = nlohmann::json;

inline std::int64_t get_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

inline json to_json(const Rational& r) { return {{"num", r.num()}, {"den", r.den()}}; }

inline Rational rational_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw Error(ErrorCode::InvalidInput, "rational must be {\"num\":N,\"den\":D}");
  return Rational(get_int(j["num"], "num"), get_int(j["den"], "den"));
}

inline json to_json(const Bundle& b) {
  json pieces = json::array();
  for (const auto& p : b.pieces()) pieces.push_back({{"slope", to_json(p.slope)}, {"rank", p.rank}});
  return {{"pieces", pieces}};
}

// Re-canonicalizes whatever order the pieces arrive in.
inline Bundle bundle_from_json(const json& j) {
  if (!j.is_object() || !j.contains("pieces") || !j["pieces"].is_array())
    throw Error(ErrorCode::InvalidInput, "bundle must be {\"pieces\":[...]}");
  std::vector<IsoclinicPiece> ps;
  for (const auto& p : j["pieces"]) {
    if (!p.is_object() || !p.contains("slope") || !p.contains("rank"))
      throw Error(ErrorCode::InvalidInput, "piece must carry slope and rank");
    ps.push_back({rational_from_json(p["slope"]), get_int(p["rank"], "rank")});
  }
  return Bundle::canonicalize(std::move(ps));
}

inline std::vector<std::int64_t> ints_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be an integer array");
  std::vector<std::int64_t> v;
  for (const auto& x : j) v.push_back(get_int(x, what));
  return v;
}

inline json levi_chi_to_json(const LeviDatum& L, const Character& chi) {
  return {{"levi", L.parts()}, {"chi", chi.values()}};
}

inline json to_json(const CategoryLabel& l) {
  if (l.is_zero()) return json{{"zero", true}};
  json a = json::array();
  for (const auto& g : l.assignment()) {
    json grp = json::array();
    for (auto i : g) grp.push_back(i + 1);
    a.push_back(grp);
  }
  return {{"bundle", to_json(l.bundle())}, {"assignment", a}};
}

inline CategoryLabel label_from_json(const LeviDatum& L, const json& j) {
  if (j.is_object() && j.contains("zero")) return CategoryLabel::zero();
  if (!j.is_object() || !j.contains("bundle") || !j.contains("assignment") || !j["assignment"].is_array())
    throw Error(ErrorCode::InvalidInput, "label must be {\"bundle\":...,\"assignment\":[[...],...]}");
  std::vector<std::vector<std::size_t>> a;
  for (const auto& g : j["assignment"]) {
    std::vector<std::size_t> grp;
    for (auto i : ints_from_json(g, "factor index")) {
      if (i < 1) throw Error(ErrorCode::InvalidInput, "factor indices are 1-based");
      grp.push_back(static_cast<std::size_t>(i - 1));
    }
    a.push_back(grp);
  }
  return make_label(L, bundle_from_json(j["bundle"]), std::move(a));
}

inline json to_json(const SandwichEvidence& e) {
  json lo = json::array(), up = json::array();
  for (const auto& r : e.lower_margin) lo.push_back(to_json(r));
  for (const auto& r : e.upper_margin) up.push_back(to_json(r));
  return {{"k", e.k}, {"lower_margin", lo}, {"upper_margin", up}};
}

inline json to_json(const ReductionDatum& d) {
  return {{"kind", to_string(d.kind)},
          {"m1", d.m1},
          {"m2", d.m2},
          {"theta", {to_json(d.theta.first), to_json(d.theta.second)}},
          {"theta_prime", {to_json(d.theta_prime.first), to_json(d.theta_prime.second)}},
          {"mu_factor", d.mu_factor()}};
}

inline json to_json(const StalkResult& s) {
  return {{"target", to_json(s.target)},
          {"is_equivalence", s.is_equivalence},
          {"shift_ledger", s.shift_ledger},
          {"evidence", s.evidence}};
}

// Compact encodings used inside derivation traces: a rational is [num, den] and a
// bundle is [[[num, den], rank], ...] in HN order.
namespace compact {

inline json rat(const Rational& r) { return json::array({r.num(), r.den()}); }

inline json bundle(const Bundle& b) {
  json a = json::array();
  for (const auto& p : b.pieces()) a.push_back(json::array({rat(p.slope), p.rank}));
  return a;
}

inline json label(const CategoryLabel& l) {
  json a = json::array();
  for (const auto& g : l.assignment()) {
    json grp = json::array();
    for (auto i : g) grp.push_back(i + 1);
    a.push_back(grp);
  }
  return {{"bundle", bundle(l.bundle())}, {"assignment", a}};
}

}  // namespace compact

}  // namespace ffhecke::io
