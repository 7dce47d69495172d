// Acceptance suite: end-to-end verification of the toolkit's algebraic
// guarantees on exact integer arithmetic, the exhaustive search oracle,
// the FFT cross-validation, and CLI determinism. Each criterion prints
// one PASS/FAIL line; stated runtime budgets are enforced in-process.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "pseq/analysis.hpp"
#include "pseq/gf.hpp"
#include "pseq/search.hpp"
#include "pseq/sequence.hpp"

#ifndef PSEQ_CLI_PATH
#error "PSEQ_CLI_PATH must point at the pseq binary"
#endif

namespace {

using pseq::BalanceKind;
using pseq::SearchSpec;
using pseq::Sequence;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw Failure(msg);
}

constexpr std::array<std::pair<std::int64_t, int>, 8> kMseqParams{
    {{2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}, {5, 2}, {7, 2}}};

std::vector<Sequence> suite_mseqs() {
  std::vector<Sequence> out;
  for (auto [p, m] : kMseqParams) out.push_back(pseq::generate_mseq(pseq::FieldCtx::find_primitive(p, m)));
  return out;
}

pseq::SearchResult run_search(std::int64_t p, std::int64_t n, bool prune, bool canonical = false) {
  return pseq::search_itla(SearchSpec{p, n, canonical, prune});
}

std::set<std::vector<std::int64_t>> as_set(const pseq::SearchResult& r) {
  std::set<std::vector<std::int64_t>> out;
  for (const auto& s : r.sequences) out.insert(s.data());
  return out;
}

// Every ITLA sequence the suite touches: the eight m-sequences, their full
// constant-shift families, and everything the searches find.
std::vector<Sequence> suite_itla_pool() {
  std::vector<Sequence> pool;
  for (const auto& seq : suite_mseqs()) {
    for (std::int64_t c = 0; c < seq.p(); ++c) pool.push_back(pseq::constant_shift(seq, 0, c));
  }
  for (auto [p, n] : {std::pair<std::int64_t, std::int64_t>{2, 3}, {2, 7}, {3, 8}}) {
    for (const auto& seq : run_search(p, n, true).sequences) pool.push_back(seq);
  }
  for (std::int64_t n = 2; n <= 15; ++n) {
    for (const auto& seq : run_search(2, n, true).sequences) pool.push_back(seq);
  }
  return pool;
}

struct CmdResult {
  int status = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PSEQ_CLI_PATH) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  require(pipe != nullptr, "popen failed");
  CmdResult result;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
  const int rc = pclose(pipe);
  result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return result;
}

// --- criteria ---------------------------------------------------------

// Generated m-sequences carry the exact two-level property and are almost
// balanced with zero exceptional and t = p^{m-1}.
void criterion1() {
  for (auto [p, m] : kMseqParams) {
    auto ctx = pseq::FieldCtx::find_primitive(p, m);
    auto seq = pseq::generate_mseq(ctx);
    const auto tag = "(" + std::to_string(p) + "," + std::to_string(m) + ")";
    auto verdict = pseq::is_ideal_two_level(seq);
    require(verdict.itla && !verdict.first_failing_shift, "m-sequence " + tag + " is not ITLA");
    std::int64_t t = 1;
    for (int i = 1; i < m; ++i) t *= p;
    auto balance = pseq::balance_verdict(pseq::multiplicity_profile(seq));
    require(balance.kind == BalanceKind::almost_balanced, tag + " not almost balanced");
    require(balance.exceptional == 0, tag + " exceptional element is not 0");
    require(balance.t == t, tag + " t != p^{m-1}");
    require(pseq::multiplicity_profile(seq).mu[0] == t - 1, tag + " zero count != p^{m-1} - 1");
  }
}

// Unit magnitude of the period sum, exactly in Z[w].
void criterion2() {
  std::vector<Sequence> seqs = suite_mseqs();
  for (auto [p, n] : {std::pair<std::int64_t, std::int64_t>{2, 3}, {2, 5}, {2, 9}, {2, 7}, {3, 8}}) {
    for (const auto& seq : run_search(p, n, true).sequences) seqs.push_back(seq);
  }
  for (const auto& seq : seqs) {
    require(pseq::sum_magnitude_sq(seq).equals_integer(1),
            "sum magnitude squared != 1 for p=" + std::to_string(seq.p()) +
                " N=" + std::to_string(seq.period()));
  }
}

// Constant shifts preserve ITLA, move the exceptional element, and leave the
// exact spectrum untouched shift-by-shift.
void criterion3() {
  for (const auto& seq : suite_mseqs()) {
    for (std::int64_t c = 0; c < seq.p(); ++c) {
      auto shifted = pseq::constant_shift(seq, 0, c);
      require(pseq::is_ideal_two_level(shifted).itla, "shifted family member lost ITLA");
      auto balance = pseq::balance_verdict(pseq::multiplicity_profile(shifted));
      require(balance.exceptional == c, "exceptional element did not move to c");
      for (std::int64_t k = 0; k < seq.period(); ++k) {
        require(pseq::shift_correlation_exact(shifted, k) == pseq::shift_correlation_exact(seq, k),
                "spectrum changed under constant shift");
      }
    }
  }
}

// Admissible periods and flat difference profiles for every ITLA sequence;
// binary periods found by search obey the mod-4 condition.
void criterion4() {
  for (const auto& seq : suite_itla_pool()) {
    const std::int64_t p = seq.p(), n = seq.period();
    require((n + 1) % p == 0, "ITLA sequence with N != -1 mod p");
    const std::int64_t t = (n + 1) / p;
    for (std::int64_t k = 1; k < n; ++k) {
      auto d = pseq::difference_profile(seq, k);
      require(d.d[0] == t - 1, "difference profile d[0] != t-1");
      for (std::int64_t c = 1; c < p; ++c) require(d.d[c] == t, "difference profile d[c] != t");
    }
  }
  for (std::int64_t n = 1; n <= 15; ++n) {
    auto r = run_search(2, n, true);
    if (!r.sequences.empty()) {
      require(n % 4 == 3, "binary ITLA period " + std::to_string(n) + " found with N != -1 mod 4");
    }
  }
}

// The exhaustive search oracle, with pruning soundness.
void criterion5() {
  const std::set<std::vector<std::int64_t>> expected23{{0, 0, 1}, {0, 1, 0}, {0, 1, 1},
                                                       {1, 0, 0}, {1, 0, 1}, {1, 1, 0}};
  for (auto [p, n] : {std::pair<std::int64_t, std::int64_t>{2, 3}, {2, 5}, {2, 9}, {2, 7}, {3, 8}}) {
    auto pruned = run_search(p, n, true);
    auto unpruned = run_search(p, n, false);
    require(as_set(pruned) == as_set(unpruned),
            "pruned/no-prune mismatch at p=" + std::to_string(p) + " N=" + std::to_string(n));
    require(unpruned.enumerated + unpruned.pruned == pruned.enumerated + pruned.pruned,
            "enumeration accounting mismatch");
  }

  auto r23 = run_search(2, 3, true);
  require(as_set(r23) == expected23, "search(2,3) did not return exactly the six known sequences");
  require(run_search(2, 5, true).sequences.empty(), "search(2,5) should be empty");
  require(run_search(2, 9, true).sequences.empty(), "search(2,9) should be empty");

  auto r27 = run_search(2, 7, true);
  require(!r27.sequences.empty(), "search(2,7) should be nonempty");
  auto set27 = as_set(r27);
  for (const auto& s : r27.sequences) {
    for (std::int64_t k = 0; k < 7; ++k) {
      require(set27.count(pseq::cyclic_shift(s, k).data()) == 1, "search(2,7) not rotation-closed");
    }
    require(set27.count(pseq::constant_shift(s, 0, 1).data()) == 1, "search(2,7) not complement-closed");
  }

  auto r38 = run_search(3, 8, true);
  require(!r38.sequences.empty(), "search(3,8) should be nonempty");
  auto set38 = as_set(r38);
  require(set38.count(pseq::generate_mseq(pseq::FieldCtx::find_primitive(3, 2)).data()) == 1,
          "search(3,8) is missing the generated m-sequence");
  for (const auto& s : r38.sequences) {
    for (std::int64_t k = 0; k < 8; ++k) {
      require(set38.count(pseq::cyclic_shift(s, k).data()) == 1, "search(3,8) not rotation-closed");
    }
    for (std::int64_t c = 0; c < 3; ++c) {
      require(set38.count(pseq::constant_shift(s, 0, c).data()) == 1,
              "search(3,8) not constant-shift-closed");
    }
  }
}

// Near-constant checker vs direct evaluation of both difference equations
// followed by profile inspection, over all tuples with entries in [1, 6].
void criterion6() {
  for (std::size_t k = 2; k <= 6; ++k) {
    std::vector<std::int64_t> a(k, 1);
    for (;;) {
      std::int64_t eq3 = 0, eq4 = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const auto d1 = a[i] - a[(i + 1) % k];
        const auto d2 = a[i] - a[(i + 2) % k];
        eq3 += d1 * d1;
        eq4 += d2 * d2;
      }
      const bool expect = eq3 == 2 && (k < 4 || eq4 == 2);
      auto got = pseq::near_constant_check(a);
      require(got.accepted == expect, "accept/reject mismatch");
      if (expect) {
        std::size_t idx = 0;
        if (k == 2) {
          idx = a[0] <= a[1] ? 0 : 1;
        } else {
          for (std::size_t i = 0; i < k; ++i) {
            std::size_t same = 0;
            for (std::size_t j = 0; j < k; ++j) same += a[j] == a[i];
            if (same == 1) idx = i;
          }
        }
        require(got.index == idx, "exceptional index mismatch");
        require(got.base + got.sign == a[idx] && (got.sign == 1 || got.sign == -1),
                "base/sign inconsistent with the tuple");
      }
      std::size_t i = 0;
      while (i < k && ++a[i] == 7) a[i++] = 1;
      if (i == k) break;
    }
  }
}

// FFT spectrum vs the exact integer path at every shift.
void criterion7() {
  std::mt19937_64 rng(2024);
  const std::array<std::int64_t, 4> primes{2, 3, 5, 7};
  for (int i = 0; i < 100; ++i) {
    const std::int64_t p = primes[i % primes.size()];
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 9999);
    std::uniform_int_distribution<std::int64_t> dist(0, p - 1);
    std::vector<std::int64_t> data(n);
    for (auto& v : data) v = dist(rng);
    Sequence seq(p, std::move(data));
    const double dev = pseq::max_spectrum_deviation(pseq::correlation_spectrum_fft(seq),
                                                    pseq::correlation_spectrum_exact(seq));
    require(dev <= 1e-6, "FFT deviates by " + std::to_string(dev) + " at p=" + std::to_string(p) +
                             " N=" + std::to_string(n));
  }
}

// Profile identity: sum mu^2 - B_j = 1 for j = 1 (and j = 2 when p >= 3).
void criterion8() {
  for (const auto& seq : suite_itla_pool()) {
    auto prof = pseq::multiplicity_profile(seq);
    auto b = pseq::multiplicity_autocorrelation(prof);
    require(b[0] - b[1] == 1, "sum mu^2 - B_1 != 1");
    if (seq.p() >= 3) require(b[0] - b[2] == 1, "sum mu^2 - B_2 != 1");
  }
}

// CLI determinism: search output is independent of the parallelism degree
// (elapsed_ms aside, which measures wall time) and generate is byte-stable.
void criterion9() {
  auto compare_streams = [](const CmdResult& a, const CmdResult& b) {
    require(a.status == 0 && b.status == 0, "search exited nonzero");
    const auto na = a.out.find('\n'), nb = b.out.find('\n');
    require(na != std::string::npos && nb != std::string::npos, "missing search header");
    auto ha = nlohmann::json::parse(a.out.substr(0, na));
    auto hb = nlohmann::json::parse(b.out.substr(0, nb));
    ha.erase("elapsed_ms");
    hb.erase("elapsed_ms");
    require(ha == hb, "search headers differ across job counts");
    require(a.out.substr(na) == b.out.substr(nb), "search records differ across job counts");
  };
  compare_streams(run_cli("search --p 3 --N 8 --jobs 1"), run_cli("search --p 3 --N 8 --jobs 8"));
  compare_streams(run_cli("search --p 3 --N 8 --canonical --no-prune --jobs 1"),
                  run_cli("search --p 3 --N 8 --canonical --no-prune --jobs 8"));

  for (const std::string args : {"generate --p 3 --m 2 2>/dev/null", "generate --p 2 --m 5 2>/dev/null"}) {
    auto first = run_cli(args);
    auto second = run_cli(args);
    require(first.status == 0 && second.status == 0, "generate exited nonzero");
    require(!first.out.empty() && first.out == second.out, "generate output not byte-identical");
  }
}

struct Criterion {
  int id;
  const char* description;
  std::function<void()> run;
  long budget_ms;  // 0: no stated budget
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "m-sequences: exact ITLA, almost balanced, exceptional 0, t = p^(m-1)", criterion1, 5000},
      {2, "unit magnitude of the period sum over all suite sequences", criterion2, 0},
      {3, "constant-shift families: ITLA preserved, exceptional moved, spectrum identical", criterion3, 0},
      {4, "period admissibility and flat difference profiles; binary mod-4 sweep", criterion4, 0},
      {5, "exhaustive search oracle with pruning soundness", criterion5, 60000},
      {6, "near-constant checker vs brute force over [1,6]^k, k <= 6", criterion6, 10000},
      {7, "FFT vs exact correlation at every shift, 100 random sequences", criterion7, 60000},
      {8, "profile identity sum mu^2 - B_j = 1", criterion8, 0},
      {9, "CLI determinism across --jobs and repeated generate runs", criterion9, 0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    if (error.empty() && c.budget_ms > 0 && ms >= c.budget_ms) {
      error = "exceeded the " + std::to_string(c.budget_ms) + " ms budget";
    }
    if (error.empty()) {
      std::printf("criterion %d PASS (%ld ms): %s\n", c.id, static_cast<long>(ms), c.description);
    } else {
      ++failures;
      std::printf("criterion %d FAIL (%ld ms): %s -- %s\n", c.id, static_cast<long>(ms), c.description,
                  error.c_str());
    }
  }
  if (failures) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
