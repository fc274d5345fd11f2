#pragma once

#include <atomic>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ffhecke/certifier.hpp"
#include "ffhecke/trace_check.hpp"

namespace ffhecke {

// All compositions of n, in lexicographic order.
inline std::vector<std::vector<std::int64_t>> compositions(std::int64_t n) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur;
  auto rec = [&](auto&& self, std::int64_t left) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::int64_t k = 1; k <= left; ++k) {
      cur.push_back(k);
      self(self, left - k);
      cur.pop_back();
    }
  };
  if (n > 0) rec(rec, n);
  return out;
}

// All chi >= 0 of length r with |chi| <= max_total.
inline std::vector<Character> characters_up_to(std::size_t r, std::int64_t max_total) {
  std::vector<Character> out;
  std::vector<std::int64_t> cur;
  auto rec = [&](auto&& self, std::int64_t left) -> void {
    if (cur.size() == r) {
      out.emplace_back(cur);
      return;
    }
    for (std::int64_t a = 0; a <= left; ++a) {
      cur.push_back(a);
      self(self, left - a);
      cur.pop_back();
    }
  };
  rec(rec, max_total);
  return out;
}

struct SweepFailure {
  std::string claim;
  std::string reason;
};

struct SweepReport {
  std::size_t certified = 0;
  std::size_t failed = 0;
  std::size_t rejected = 0;
  std::vector<SweepFailure> failures;
};

struct SweepOptions {
  std::int64_t max_n = 8;
  std::int64_t max_chi = 4;
  bool parallel = false;
  bool check = false;
};

inline std::vector<std::pair<LeviDatum, Character>> sweep_instances(std::int64_t max_n, std::int64_t max_chi) {
  std::vector<std::pair<LeviDatum, Character>> out;
  for (std::int64_t n = 1; n <= max_n; ++n)
    for (const auto& parts : compositions(n)) {
      LeviDatum L(parts);
      for (auto& chi : characters_up_to(L.r(), max_chi)) out.emplace_back(L, std::move(chi));
    }
  return out;
}

// One shared certifier; with parallel set, instances are spread over hardware threads.
inline SweepReport sweep(const SweepOptions& opt, cert::Certifier& certifier) {
  auto jobs = sweep_instances(opt.max_n, opt.max_chi);
  SweepReport rep;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    check::TraceChecker checker;
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto& [L, chi] = jobs[i];
      auto v = certifier.certify(L, chi);
      std::optional<check::CheckResult> cr;
      if (v.certified() && opt.check) cr = checker.check(v.trace.to_json());
      std::lock_guard lock(mu);
      if (!v.certified()) {
        ++rep.failed;
        rep.failures.push_back({claim_key(L, chi), std::string(cert::to_string(v.kind)) + ": " + v.reason});
      } else if (cr && !cr->ok) {
        ++rep.rejected;
        rep.failures.push_back({claim_key(L, chi), "trace rejected: " + cr->failure});
      } else {
        ++rep.certified;
      }
    }
  };
  unsigned threads = opt.parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::sort(rep.failures.begin(), rep.failures.end(),
            [](const SweepFailure& a, const SweepFailure& b) { return a.claim < b.claim; });
  return rep;
}

inline SweepReport sweep(const SweepOptions& opt) {
  cert::Certifier certifier;
  return sweep(opt, certifier);
}

}  // namespace ffhecke
