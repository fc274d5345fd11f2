#pragma once

// Command-line front end. Exit codes: 0 success, 1 negative verdict, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ffhecke/render.hpp"
#include "ffhecke/sweep.hpp"

namespace ffhecke::cli {

using json = nlohmann::json;

inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;

namespace detail {

inline std::vector<std::int64_t> parse_list(const std::string& s, const char* what) {
  std::vector<std::int64_t> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long x = 0;
    try {
      x = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw Error(ErrorCode::InvalidInput, std::string(what) + ": '" + item + "' is not an integer");
    v.push_back(x);
  }
  if (v.empty()) throw Error(ErrorCode::InvalidInput, std::string(what) + " is empty");
  return v;
}

// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
inline json load_json(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + arg);
  return json::parse(in);
}

inline void print_json(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ffhecke: Hecke stalks at Langlands-Shahidi type parameters for GL_n"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output")->configurable(false);

  std::string levi, chi;
  auto add_levi_chi = [&](CLI::App* sc) {
    sc->add_option("--levi", levi, "Levi block sizes, e.g. 2,3,3")->required();
    sc->add_option("--chi", chi, "character, e.g. 2,2,1")->required();
  };

  auto* chi2b = app.add_subcommand("chi2b", "bundle b_chi, permutation w and kappa");
  add_levi_chi(chi2b);

  std::string bundle_arg;
  auto* reach = app.add_subcommand("reach", "Std modification candidates of a bundle");
  reach->add_option("--bundle", bundle_arg, "bundle JSON or file")->required();

  std::string from_arg, to_arg;
  auto* classify = app.add_subcommand("classify", "Hodge-Newton reducibility of a modification");
  classify->add_option("--from", from_arg, "source bundle JSON or file")->required();
  classify->add_option("--to", to_arg, "target bundle JSON or file")->required();

  std::string source_arg, probe_arg;
  auto* stalk_cmd = app.add_subcommand("stalk", "stalk of O(chi) applied at a source label");
  add_levi_chi(stalk_cmd);
  stalk_cmd->add_option("--source", source_arg, "source label JSON or file (default: trivial stratum)");
  stalk_cmd->add_option("--probe", probe_arg, "bundle JSON or file; exit 1 if the stalk there is zero");

  std::string emit;
  auto* certify = app.add_subcommand("certify", "certify an instance and optionally write its trace");
  add_levi_chi(certify);
  certify->add_option("--emit", emit, "write the trace to this file");

  std::string trace_path;
  auto* check_cmd = app.add_subcommand("check", "re-verify a trace file");
  check_cmd->add_option("trace", trace_path, "trace JSON file")->required();

  SweepOptions sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "certify every composition and small chi");
  sweep_cmd->add_option("--max-n", sw.max_n, "largest n")->check(CLI::Range(1, 12));
  sweep_cmd->add_option("--max-chi", sw.max_chi, "largest |chi|")->check(CLI::Range(0, 12));
  sweep_cmd->add_flag("--parallel", sw.parallel, "use all hardware threads");
  sweep_cmd->add_flag("--check", sw.check, "also re-verify every trace");

  int fig = 0;
  std::vector<std::string> bundles;
  std::string format = "svg", output;
  bool mark_min = false, dashed_rest = false;
  std::vector<std::int64_t> splits;
  auto* render_cmd = app.add_subcommand("render", "draw Newton polygons");
  render_cmd->add_option("--figure", fig, "fixture 1, 2 or 3")->check(CLI::Range(1, 3));
  render_cmd->add_option("--bundle", bundles, "bundle JSON or file (repeatable)");
  render_cmd->add_option("--format", format, "svg or ascii")->check(CLI::IsMember({"svg", "ascii"}));
  render_cmd->add_flag("--mark-min", mark_min, "mark the smallest slope of the first bundle");
  render_cmd->add_flag("--dashed", dashed_rest, "dash every bundle after the first");
  render_cmd->add_option("--split", splits, "x coordinate of a dotted split line (repeatable)");
  render_cmd->add_option("-o,--output", output, "write to this file instead of stdout");

  for (auto* sc : {chi2b, reach, classify, stalk_cmd, certify, check_cmd, sweep_cmd, render_cmd})
    sc->add_flag("--json", as_json, "machine-readable output");

  if (args.empty()) {
    err << app.help();
    return kUsage;
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (chi2b->parsed()) {
      LeviDatum L(detail::parse_list(levi, "--levi"));
      Character c(detail::parse_list(chi, "--chi"));
      require_length(L, c);
      auto r = b_of_chi(L, c);
      std::vector<std::int64_t> w;
      for (std::size_t i = 1; i <= L.r(); ++i) w.push_back(static_cast<std::int64_t>(r.w(i)));
      if (as_json) {
        detail::print_json(out, {{"bundle", io::to_json(r.bundle)}, {"w", w}, {"kappa", kappa(r.bundle)}});
      } else {
        out << "bundle: " << to_string(r.bundle) << "\nw: " << format_ints(w) << "\nkappa: " << kappa(r.bundle) << '\n';
      }
      return kOk;
    }

    if (reach->parsed()) {
      Bundle b = io::bundle_from_json(detail::load_json(bundle_arg));
      auto set = reach_over(b);
      if (as_json) {
        json a = json::array();
        for (const auto& x : set) a.push_back(io::to_json(x));
        detail::print_json(out, {{"source", io::to_json(b)}, {"reach", a}});
      } else {
        out << "reach of " << to_string(b) << " (" << set.size() << "):\n";
        for (const auto& x : set) out << "  " << to_string(x) << '\n';
      }
      return kOk;
    }

    if (classify->parsed()) {
      Bundle b = io::bundle_from_json(detail::load_json(from_arg));
      Bundle b2 = io::bundle_from_json(detail::load_json(to_arg));
      SandwichEvidence ev;
      if (!exists_mod(b, b2, ModType::Std, &ev)) {
        if (as_json)
          detail::print_json(out, {{"verdict", "no-modification"}});
        else
          out << "no Std modification " << to_string(b) << " -> " << to_string(b2) << '\n';
        return kNegative;
      }
      auto d = classify_reducibility(b, b2);
      if (as_json) {
        json j = {{"verdict", d ? to_string(d->kind) : "none"}, {"sandwich", io::to_json(ev)}};
        if (d) {
          j["datum"] = io::to_json(*d);
          j["shift"] = reduction_transport(*d).shift;
        }
        detail::print_json(out, j);
      } else if (d) {
        out << to_string(d->kind) << " for GL_" << d->m1 << " x GL_" << d->m2 << ": theta = ("
            << to_string(d->theta.first) << ", " << to_string(d->theta.second) << "), theta' = ("
            << to_string(d->theta_prime.first) << ", " << to_string(d->theta_prime.second)
            << "), shift = " << reduction_transport(*d).shift << '\n';
      } else {
        out << "none\n";
      }
      return kOk;
    }

    if (stalk_cmd->parsed()) {
      LeviDatum L(detail::parse_list(levi, "--levi"));
      Character c(detail::parse_list(chi, "--chi"));
      auto phi = ParameterDatum::generic(L);
      CategoryLabel src = source_arg.empty() ? trivial_label(L) : io::label_from_json(L, detail::load_json(source_arg));
      StalkResult r = probe_arg.empty()
                          ? stalk(phi, c, src)
                          : stalk_at(phi, c, src, io::bundle_from_json(detail::load_json(probe_arg)));
      if (as_json) {
        detail::print_json(out, io::to_json(r));
      } else if (r.is_zero()) {
        out << "zero\n";
      } else {
        out << "target: " << to_string(r.target.bundle()) << "\nequivalence: " << (r.is_equivalence ? "yes" : "no")
            << "\nshift: " << r.shift_ledger << "\nevidence: " << r.evidence << '\n';
      }
      return !probe_arg.empty() && r.is_zero() ? kNegative : kOk;
    }

    if (certify->parsed()) {
      LeviDatum L(detail::parse_list(levi, "--levi"));
      Character c(detail::parse_list(chi, "--chi"));
      require_length(L, c);
      cert::Certifier certifier;
      auto v = certifier.certify(L, c);
      if (v.certified() && !emit.empty()) {
        std::ofstream f(emit);
        if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + emit);
        f << v.trace.to_json().dump(1) << '\n';
      }
      if (as_json) {
        json j = {{"verdict", cert::to_string(v.kind)}, {"claim", claim_key(L, c)}};
        if (v.certified()) j["claims"] = v.trace.claims.size();
        if (!v.certified()) {
          j["failed_claim"] = v.failed_claim;
          j["reason"] = v.reason;
        }
        if (!v.log.empty()) j["log"] = v.log;
        detail::print_json(out, j);
      } else {
        out << cert::to_string(v.kind) << ' ' << claim_key(L, c);
        if (v.certified())
          out << " (" << v.trace.claims.size() << " claims)\n";
        else
          out << "\n  at " << v.failed_claim << ": " << v.reason << '\n';
        for (const auto& line : v.log) out << "  note: " << line << '\n';
      }
      return v.certified() ? kOk : kNegative;
    }

    if (check_cmd->parsed()) {
      json trace;
      {
        std::ifstream in(trace_path);
        if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + trace_path);
        trace = json::parse(in);
      }
      auto r = check::check_trace(trace);
      if (as_json)
        detail::print_json(out, {{"ok", r.ok}, {"failure", r.failure}});
      else
        out << (r.ok ? "ok" : "rejected: " + r.failure) << '\n';
      return r.ok ? kOk : kNegative;
    }

    if (sweep_cmd->parsed()) {
      auto rep = sweep(sw);
      std::size_t bad = rep.failed + rep.rejected;
      if (as_json) {
        json f = json::array();
        for (const auto& x : rep.failures) f.push_back({{"claim", x.claim}, {"reason", x.reason}});
        detail::print_json(out, {{"certified", rep.certified}, {"failed", bad}, {"failures", f}});
      } else {
        out << "certified: " << rep.certified << ", failed: " << bad << '\n';
        for (const auto& x : rep.failures) out << "  " << x.claim << ": " << x.reason << '\n';
      }
      return bad == 0 ? kOk : kNegative;
    }

    if (render_cmd->parsed()) {
      render::RenderSpec spec;
      auto fmt = format == "ascii" ? render::Format::ASCII : render::Format::SVG;
      if (fig != 0) {
        if (!bundles.empty()) throw Error(ErrorCode::InvalidInput, "--figure and --bundle are exclusive");
        spec = render::figure(fig, fmt);
      } else {
        if (bundles.empty()) throw Error(ErrorCode::InvalidInput, "render needs --figure or at least one --bundle");
        spec.format = fmt;
        for (std::size_t i = 0; i < bundles.size(); ++i)
          spec.overlays.push_back({io::bundle_from_json(detail::load_json(bundles[i])),
                                   i > 0 && dashed_rest ? render::Style::Dashed : render::Style::Solid,
                                   i == 0 && mark_min});
        spec.splits = splits;
      }
      auto text = render::render(spec);
      if (output.empty()) {
        out << text;
      } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + output);
        f << text;
      }
      return kOk;
    }
  } catch (const json::exception& e) {
    err << "error: invalid JSON: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

inline int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace ffhecke::cli
