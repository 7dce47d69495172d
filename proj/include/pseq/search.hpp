#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pseq/analysis.hpp"
#include "pseq/common.hpp"
#include "pseq/sequence.hpp"

namespace pseq {

inline constexpr std::uint64_t kSearchBudget = std::uint64_t{1} << 34;

struct SearchSpec {
  std::int64_t p = 2;
  std::int64_t N = 1;
  bool canonicalize = false;
  bool prune_balance = true;
};

enum class SearchEmptyReason { none, degenerate_period, inadmissible_period, search_exhausted };

inline const char* to_string(SearchEmptyReason r) {
  switch (r) {
    case SearchEmptyReason::degenerate_period: return "degenerate_period";
    case SearchEmptyReason::inadmissible_period: return "inadmissible_period";
    case SearchEmptyReason::search_exhausted: return "search_exhausted";
    default: return "none";
  }
}

/// sequences: every ITLA sequence of the given (p, N) in lexicographic order
/// (canonical orbit representatives only, when requested). enumerated counts
/// candidates whose full profile was reached; pruned counts candidates cut
/// away without correlation testing, so enumerated + pruned = p^N.
struct SearchResult {
  std::vector<Sequence> sequences;
  std::uint64_t enumerated = 0;
  std::uint64_t pruned = 0;
  std::chrono::milliseconds elapsed{0};
  SearchEmptyReason reason = SearchEmptyReason::none;
};

/// Lexicographically least member of the orbit of `a` under cyclic shifts
/// composed with constant shifts (p*N candidates). Decimations are not
/// quotiented: the family structure under study is rotation + constant
/// shift only.
inline Sequence canonical_form(const Sequence& a) {
  const std::int64_t n = a.period();
  const std::int64_t p = a.p();
  std::vector<std::int64_t> best = a.data();
  std::vector<std::int64_t> cand(n);
  for (std::int64_t c = 0; c < p; ++c) {
    for (std::int64_t k = 0; k < n; ++k) {
      for (std::int64_t i = 0; i < n; ++i) cand[i] = (a.data()[(i + k) % n] + c) % p;
      if (cand < best) best = cand;
    }
  }
  return Sequence(p, std::move(best));
}

namespace detail {

struct SearchShard {
  std::vector<Sequence> found;
  std::uint64_t enumerated = 0;
};

// DFS over positions pos..N-1 in digit order 0..p-1; with cap pruning every
// count stays <= t, which together with sum = p*t - 1 forces an almost
// balanced profile at the leaves.
class SearchWorker {
 public:
  SearchWorker(const SearchSpec& spec, std::int64_t t)
      : spec_(spec), t_(t), digits_(spec.N, 0), counts_(spec.p, 0) {}

  void run_prefix(std::int64_t prefix_index, std::int64_t prefix_len, SearchShard& shard) {
    std::fill(counts_.begin(), counts_.end(), 0);
    std::int64_t rest = prefix_index;
    for (std::int64_t i = prefix_len - 1; i >= 0; --i) {
      digits_[i] = rest % spec_.p;
      rest /= spec_.p;
      ++counts_[digits_[i]];
    }
    if (spec_.prune_balance) {
      for (std::int64_t c = 0; c < spec_.p; ++c) {
        if (counts_[c] > t_) return;  // whole prefix pruned
      }
    }
    shard_ = &shard;
    descend(prefix_len);
    shard_ = nullptr;
  }

 private:
  void descend(std::int64_t pos) {
    if (pos == spec_.N) {
      ++shard_->enumerated;
      if (!itla_first_failure(digits_, spec_.p, scratch_)) {
        Sequence seq(spec_.p, digits_);
        if (!spec_.canonicalize || seq.data() == canonical_form(seq).data()) {
          shard_->found.push_back(std::move(seq));
        }
      }
      return;
    }
    for (std::int64_t v = 0; v < spec_.p; ++v) {
      if (spec_.prune_balance && counts_[v] + 1 > t_) continue;
      digits_[pos] = v;
      ++counts_[v];
      descend(pos + 1);
      --counts_[v];
    }
  }

  const SearchSpec& spec_;
  std::int64_t t_;
  std::vector<std::int64_t> digits_;
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> scratch_;
  SearchShard* shard_ = nullptr;
};

}  // namespace detail

/// Exhaustive enumeration of all ITLA sequences with the given parameters.
/// Work is split by fixing leading digits into disjoint prefixes; shards are
/// merged in prefix order, so results are identical at any parallelism
/// degree. Throws capacity_error when p^N exceeds the enumeration budget.
inline SearchResult search_itla(const SearchSpec& spec, int jobs = 1) {
  if (!is_prime(spec.p)) throw std::invalid_argument("p = " + std::to_string(spec.p) + " is not prime");
  if (spec.N < 1) throw std::invalid_argument("period must be at least 1");

  std::uint64_t space = 1;
  for (std::int64_t i = 0; i < spec.N; ++i) {
    if (space > kSearchBudget / static_cast<std::uint64_t>(spec.p)) {
      throw capacity_error("enumeration budget exceeded: " + std::to_string(spec.p) + "^" +
                           std::to_string(spec.N) + " > 2^34");
    }
    space *= static_cast<std::uint64_t>(spec.p);
  }

  const auto start = std::chrono::steady_clock::now();
  SearchResult result;

  auto finish = [&](SearchEmptyReason reason) -> SearchResult& {
    if (result.sequences.empty() && reason == SearchEmptyReason::none) {
      reason = SearchEmptyReason::search_exhausted;
    }
    result.reason = result.sequences.empty() ? reason : SearchEmptyReason::none;
    result.pruned = space - result.enumerated;
    result.elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return result;
  };

  // Out-of-phase correlation is undefined at N = 1; nothing is listed.
  if (spec.N == 1) return finish(SearchEmptyReason::degenerate_period);
  if (!period_admissible(spec.p, spec.N).admissible) {
    return finish(SearchEmptyReason::inadmissible_period);
  }

  const std::int64_t t = (spec.N + 1) / spec.p;

  std::int64_t prefix_len = 0;
  std::int64_t prefix_count = 1;
  if (jobs > 1) {
    while (prefix_count < jobs && prefix_len < spec.N) {
      prefix_count *= spec.p;
      ++prefix_len;
    }
  }

  std::vector<detail::SearchShard> shards(prefix_count);
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto drain = [&]() {
    detail::SearchWorker worker(spec, t);
    try {
      for (;;) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= prefix_count) break;
        worker.run_prefix(i, prefix_len, shards[i]);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(prefix_count)));
  if (workers == 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& shard : shards) {
    result.enumerated += shard.enumerated;
    for (auto& seq : shard.found) result.sequences.push_back(std::move(seq));
  }
  // Prefix-ordered merge is already lexicographic; keep the emission order
  // independent of any future scheduling change.
  std::sort(result.sequences.begin(), result.sequences.end(),
            [](const Sequence& x, const Sequence& y) { return x.data() < y.data(); });
  return finish(SearchEmptyReason::none);
}

}  // namespace pseq
