#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pseq {

// Thrown when a request exceeds the capacity bounds of this toolkit
// (enumeration budgets, field sizes, sequence periods).
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Alphabet sizes are kept small enough that trial division is exact and
// coefficient vectors of length p are always cheap to allocate.
inline constexpr std::int64_t kMaxPrime = 1 << 16;

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Distinct prime factors by trial division; adequate for n < 2^40.
inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

// base^exp, throwing capacity_error once the value would exceed `cap`.
inline std::int64_t checked_pow(std::int64_t base, std::int64_t exp, std::int64_t cap) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < exp; ++i) {
    if (r > cap / base) throw capacity_error("parameter overflow: " + std::to_string(base) + "^" + std::to_string(exp) + " exceeds capacity");
    r *= base;
  }
  return r;
}

inline std::int64_t mod_floor(std::int64_t v, std::int64_t p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

}  // namespace pseq
