#pragma once

#include <algorithm>
#include <cassert>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pseq/common.hpp"
#include "pseq/cyclotomic.hpp"
#include "pseq/fft.hpp"
#include "pseq/sequence.hpp"

namespace pseq {

/// mu[c] = number of positions n in one period with a_n = c.
/// Invariant: sum_c mu[c] = N.
struct MultiplicityProfile {
  std::int64_t p = 0;
  std::vector<std::int64_t> mu;

  bool operator==(const MultiplicityProfile&) const = default;
};

enum class BalanceKind { almost_balanced, strictly_balanced, other };

/// almost_balanced: one element (the exceptional one) appears t-1 times and
/// every other element t times, so N = p*t - 1.
struct BalanceVerdict {
  BalanceKind kind = BalanceKind::other;
  std::optional<std::int64_t> exceptional;
  std::optional<std::int64_t> t;

  bool operator==(const BalanceVerdict&) const = default;
};

/// admissible: N = p*t - 1 for a positive integer t. For p = 2 the mod4 flag
/// additionally reports whether N = -1 (mod 4), the stronger binary condition.
struct PeriodAdmissibility {
  bool admissible = false;
  std::optional<bool> mod4;
};

/// d[c] = number of positions with (a_n - a_{n+k}) mod p = c, for a fixed
/// out-of-phase shift k. Invariant: sum_c d[c] = N.
struct DifferenceProfile {
  std::int64_t k = 0;
  std::vector<std::int64_t> d;

  bool operator==(const DifferenceProfile&) const = default;
};

struct ItlaVerdict {
  bool itla = false;
  std::optional<std::int64_t> first_failing_shift;
};

/// Outcome of the near-constant tuple check. When accepted, A_m = base + sign
/// with sign in {-1, +1} and every other entry equal to base; when rejected,
/// violated_equation is 3 or 4 (the first/second cyclic-difference equation).
struct NearConstantVerdict {
  bool accepted = false;
  std::size_t index = 0;
  std::int64_t base = 0;
  std::int64_t sign = 0;
  int violated_equation = 0;
};

struct AnalysisReport {
  std::int64_t p = 0;
  std::int64_t N = 0;
  MultiplicityProfile profile;
  BalanceVerdict balance;
  bool period_admissible = false;
  bool itla = false;
  std::optional<std::int64_t> first_failing_shift;
  CyclotomicInt sum_mag_sq = CyclotomicInt::integer(2, 0);
  bool degenerate = false;
};

inline MultiplicityProfile multiplicity_profile(const Sequence& a) {
  MultiplicityProfile prof{a.p(), std::vector<std::int64_t>(a.p(), 0)};
  for (std::int64_t v : a.data()) ++prof.mu[v];
  return prof;
}

inline BalanceVerdict balance_verdict(const MultiplicityProfile& prof) {
  const auto& mu = prof.mu;
  if (std::all_of(mu.begin(), mu.end(), [&](std::int64_t v) { return v == mu[0]; })) {
    return BalanceVerdict{BalanceKind::strictly_balanced, std::nullopt, std::nullopt};
  }
  // Almost balanced: a unique index holds t-1 while the remaining p-1 hold t.
  // For p = 2 a pair (t, t-1) is read with the smaller count as exceptional.
  for (std::size_t i = 0; i < mu.size(); ++i) {
    std::int64_t rest = -1;
    bool uniform = true;
    for (std::size_t j = 0; j < mu.size(); ++j) {
      if (j == i) continue;
      if (rest == -1) {
        rest = mu[j];
      } else if (mu[j] != rest) {
        uniform = false;
        break;
      }
    }
    if (uniform && rest >= 1 && mu[i] == rest - 1) {
      return BalanceVerdict{BalanceKind::almost_balanced, static_cast<std::int64_t>(i), rest};
    }
  }
  return BalanceVerdict{BalanceKind::other, std::nullopt, std::nullopt};
}

inline PeriodAdmissibility period_admissible(std::int64_t p, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("period must be at least 1");
  PeriodAdmissibility out;
  out.admissible = (N + 1) % p == 0;
  if (p == 2) out.mod4 = (N + 1) % 4 == 0;
  return out;
}

namespace detail {

// Difference counts for shift k into a reused buffer.
inline void difference_counts(std::span<const std::int64_t> a, std::int64_t p, std::int64_t k,
                              std::vector<std::int64_t>& d) {
  const std::size_t n = a.size();
  d.assign(static_cast<std::size_t>(p), 0);
  const std::size_t shift = static_cast<std::size_t>(k);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + shift;
    if (j >= n) j -= n;
    std::int64_t v = a[i] - a[j];
    if (v < 0) v += p;
    ++d[static_cast<std::size_t>(v)];
  }
}

// R(k) = -1 iff the counts read (t-1, t, ..., t): the canonical-form integer
// criterion, without materializing the cyclotomic value.
inline bool counts_equal_minus_one(const std::vector<std::int64_t>& d) {
  const std::int64_t head = d[0] + 1;
  for (std::size_t c = 1; c < d.size(); ++c) {
    if (d[c] != head) return false;
  }
  return true;
}

// First out-of-phase shift whose exact correlation differs from -1, if any.
inline std::optional<std::int64_t> itla_first_failure(std::span<const std::int64_t> a, std::int64_t p,
                                                      std::vector<std::int64_t>& scratch) {
  const std::int64_t n = static_cast<std::int64_t>(a.size());
  for (std::int64_t k = 1; k < n; ++k) {
    difference_counts(a, p, k, scratch);
    if (!counts_equal_minus_one(scratch)) return k;
  }
  return std::nullopt;
}

}  // namespace detail

inline DifferenceProfile difference_profile(const Sequence& a, std::int64_t k) {
  if (k < 1 || k >= a.period()) throw std::invalid_argument("shift must satisfy 1 <= k < N");
  DifferenceProfile prof{k, {}};
  detail::difference_counts(a.data(), a.p(), k, prof.d);
  return prof;
}

/// Exact autocorrelation R(k) as a cyclotomic integer: N at k = 0, otherwise
/// the omega-weighted sum of the shift-k difference profile.
inline CyclotomicInt shift_correlation_exact(const Sequence& a, std::int64_t k) {
  if (k < 0 || k >= a.period()) throw std::invalid_argument("shift must satisfy 0 <= k < N");
  if (k == 0) return CyclotomicInt::integer(a.p(), a.period());
  return CyclotomicInt::from_counts(a.p(), difference_profile(a, k).d);
}

/// Decides the ideal two-level autocorrelation property exactly: R(k) = -1
/// for every out-of-phase shift. Short-circuits at the first failure. When
/// N is not of the form p*t - 1 the shift-1 profile already cannot read
/// (t-1, t, ..., t), so the scan is cut after honestly evaluating k = 1.
inline ItlaVerdict is_ideal_two_level(const Sequence& a) {
  const std::int64_t n = a.period();
  if (n == 1) return ItlaVerdict{true, std::nullopt};  // no out-of-phase shifts; degenerate
  std::vector<std::int64_t> scratch;
  if (!period_admissible(a.p(), n).admissible) {
    detail::difference_counts(a.data(), a.p(), 1, scratch);
    if (!detail::counts_equal_minus_one(scratch)) return ItlaVerdict{false, 1};
  }
  auto fail = detail::itla_first_failure(a.data(), a.p(), scratch);
  if (fail) return ItlaVerdict{false, *fail};
  return ItlaVerdict{true, std::nullopt};
}

/// |sum_n s(n)|^2 computed exactly as S * conj(S) with S = sum_c mu[c] w^c.
inline CyclotomicInt sum_magnitude_sq(const MultiplicityProfile& prof) {
  const CyclotomicInt s = CyclotomicInt::from_counts(prof.p, prof.mu);
  return s * s.conjugate();
}

inline CyclotomicInt sum_magnitude_sq(const Sequence& a) {
  return sum_magnitude_sq(multiplicity_profile(a));
}

/// Circular self-correlation of the multiplicity profile:
/// out[n] = sum_k mu[k] * mu[(k+n) mod p].
inline std::vector<std::int64_t> multiplicity_autocorrelation(const MultiplicityProfile& prof) {
  const std::int64_t p = prof.p;
  std::vector<std::int64_t> out(p, 0);
  for (std::int64_t n = 0; n < p; ++n) {
    std::int64_t acc = 0;
    for (std::int64_t k = 0; k < p; ++k) {
      acc = checked_add(acc, checked_mul(prof.mu[k], prof.mu[(k + n) % p]));
    }
    out[n] = acc;
  }
  return out;
}

/// Near-constant tuple check over k cyclically arranged positive integers:
/// verifies sum (A_n - A_{n+1})^2 = 2 and, when k >= 4, the same for stride 2,
/// then names the unique exceptional index. For k = 2 a pair differing by 1
/// admits both readings; the smaller value is reported as exceptional.
inline NearConstantVerdict near_constant_check(std::span<const std::int64_t> a) {
  const std::size_t k = a.size();
  if (k < 2) throw std::invalid_argument("near-constant check needs at least 2 entries");

  auto stride_sum = [&](std::size_t stride) {
    std::int64_t acc = 0;
    for (std::size_t n = 0; n < k; ++n) {
      const std::int64_t d = a[n] - a[(n + stride) % k];
      acc = checked_add(acc, checked_mul(d, d));
    }
    return acc;
  };

  NearConstantVerdict out;
  if (stride_sum(1) != 2) {
    out.violated_equation = 3;
    return out;
  }
  if (k >= 4 && stride_sum(2) != 2) {
    out.violated_equation = 4;
    return out;
  }

  if (k == 2) {
    const std::size_t lo = a[0] <= a[1] ? 0 : 1;
    out.accepted = true;
    out.index = lo;
    out.base = a[1 - lo];
    out.sign = -1;
    return out;
  }
  for (std::size_t i = 0; i < k; ++i) {
    std::int64_t rest = 0;
    bool uniform = true;
    bool first = true;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      if (first) {
        rest = a[j];
        first = false;
      } else if (a[j] != rest) {
        uniform = false;
        break;
      }
    }
    if (uniform && (a[i] == rest - 1 || a[i] == rest + 1)) {
      out.accepted = true;
      out.index = i;
      out.base = rest;
      out.sign = a[i] - rest;
      return out;
    }
  }
  throw std::logic_error("difference equations held but no exceptional index exists");
}

inline NearConstantVerdict near_constant_check(const std::vector<std::int64_t>& a) {
  return near_constant_check(std::span<const std::int64_t>(a));
}

/// Full spectrum R(k), k = 0..N-1, via forward transform of s(n) = w^{a_n},
/// pointwise product with its own conjugate transform, inverse transform.
inline std::vector<std::complex<double>> correlation_spectrum_fft(const Sequence& a) {
  const std::size_t n = static_cast<std::size_t>(a.period());
  std::vector<std::complex<double>> roots(a.p());
  for (std::int64_t r = 0; r < a.p(); ++r) {
    roots[r] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(a.p()));
  }
  std::vector<std::complex<double>> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = roots[a.data()[i]];
  auto spec = detail::dft(std::move(s), false);
  for (auto& v : spec) v = std::norm(v);
  auto r = detail::dft(std::move(spec), true);
  // dft gives sum_m s(m+k) s*(m); R(k) is its conjugate.
  for (auto& v : r) v = std::conj(v);
  return r;
}

/// Exact spectrum evaluated numerically (difference-profile path, then each
/// cyclotomic value at w = e^{2 pi i / p}). Serves as the oracle for the FFT.
inline std::vector<std::complex<double>> correlation_spectrum_exact(const Sequence& a) {
  const std::int64_t n = a.period();
  const std::int64_t p = a.p();
  std::vector<std::complex<double>> roots(p);
  for (std::int64_t r = 0; r < p; ++r) {
    roots[r] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p));
  }
  std::vector<std::complex<double>> out(n);
  out[0] = static_cast<double>(n);
  std::vector<std::int64_t> d;
  for (std::int64_t k = 1; k < n; ++k) {
    detail::difference_counts(a.data(), p, k, d);
    std::complex<double> acc{0.0, 0.0};
    for (std::int64_t c = 0; c < p; ++c) acc += static_cast<double>(d[c]) * roots[c];
    out[k] = acc;
  }
  return out;
}

/// Direct O(N^2) complex summation; benchmark baseline.
inline std::vector<std::complex<double>> correlation_spectrum_naive(const Sequence& a) {
  const std::size_t n = static_cast<std::size_t>(a.period());
  std::vector<std::complex<double>> roots(a.p());
  for (std::int64_t r = 0; r < a.p(); ++r) {
    roots[r] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(a.p()));
  }
  std::vector<std::complex<double>> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = roots[a.data()[i]];
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = i + k;
      if (j >= n) j -= n;
      acc += s[i] * std::conj(s[j]);
    }
    out[k] = acc;
  }
  return out;
}

inline double max_spectrum_deviation(std::span<const std::complex<double>> x,
                                     std::span<const std::complex<double>> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spectrum length mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

/// Max |R_fft(k) - R_exact(k)| over all shifts.
inline double fft_exact_max_deviation(const Sequence& a) {
  const auto fft = correlation_spectrum_fft(a);
  const auto exact = correlation_spectrum_exact(a);
  return max_spectrum_deviation(fft, exact);
}

inline AnalysisReport analyze(const Sequence& a) {
  AnalysisReport rep;
  rep.p = a.p();
  rep.N = a.period();
  rep.profile = multiplicity_profile(a);
  rep.balance = balance_verdict(rep.profile);
  rep.period_admissible = period_admissible(a.p(), a.period()).admissible;
  const auto verdict = is_ideal_two_level(a);
  rep.itla = verdict.itla;
  rep.first_failing_shift = verdict.first_failing_shift;
  rep.sum_mag_sq = sum_magnitude_sq(rep.profile);
  rep.degenerate = a.period() == 1;
  // ITLA forces admissibility and almost-balancedness whenever out-of-phase
  // shifts exist at all.
  assert(!rep.itla || rep.degenerate ||
         (rep.period_admissible && rep.balance.kind == BalanceKind::almost_balanced));
  return rep;
}

}  // namespace pseq
