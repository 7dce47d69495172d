#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pseq/common.hpp"

namespace pseq {

/// Exact element of Z[w] for the p-th root of unity w, stored as all p
/// coefficients of sum c_k w^k. The only relation is 1 + w + ... + w^{p-1} = 0,
/// so coefficient tuples are unique modulo the all-ones vector; the canonical
/// representative has min_k c_k = 0, and two values are equal iff their
/// canonical tuples are identical. Equality with a rational integer n reduces
/// to "all coefficients equal after subtracting n from c_0".
class CyclotomicInt {
 public:
  static CyclotomicInt from_counts(std::int64_t p, std::vector<std::int64_t> counts) {
    validate_prime(p);
    if (counts.size() != static_cast<std::size_t>(p)) {
      throw std::invalid_argument("expected " + std::to_string(p) + " coefficients, got " +
                                  std::to_string(counts.size()));
    }
    return CyclotomicInt(p, std::move(counts));
  }

  static CyclotomicInt integer(std::int64_t p, std::int64_t n) {
    validate_prime(p);
    std::vector<std::int64_t> c(p, 0);
    c[0] = n;
    return CyclotomicInt(p, std::move(c));
  }

  std::int64_t prime() const { return p_; }

  /// Canonical coefficients: min is always 0.
  const std::vector<std::int64_t>& coeffs() const { return c_; }

  bool operator==(const CyclotomicInt&) const = default;

  CyclotomicInt operator+(const CyclotomicInt& o) const {
    require_same_prime(o);
    std::vector<std::int64_t> c(p_);
    for (std::int64_t k = 0; k < p_; ++k) c[k] = checked_add(c_[k], o.c_[k]);
    return CyclotomicInt(p_, std::move(c));
  }

  /// Convolution with exponents mod p (w^p = 1), then canonicalized.
  CyclotomicInt operator*(const CyclotomicInt& o) const {
    require_same_prime(o);
    std::vector<std::int64_t> c(p_, 0);
    for (std::int64_t i = 0; i < p_; ++i) {
      if (c_[i] == 0) continue;
      for (std::int64_t j = 0; j < p_; ++j) {
        std::int64_t k = i + j;
        if (k >= p_) k -= p_;
        c[k] = checked_add(c[k], checked_mul(c_[i], o.c_[j]));
      }
    }
    return CyclotomicInt(p_, std::move(c));
  }

  /// Complex conjugation w^k -> w^{p-k}: an index permutation.
  CyclotomicInt conjugate() const {
    std::vector<std::int64_t> c(p_);
    for (std::int64_t k = 0; k < p_; ++k) c[k == 0 ? 0 : p_ - k] = c_[k];
    return CyclotomicInt(p_, std::move(c));
  }

  bool equals_integer(std::int64_t n) const {
    const std::int64_t head = checked_sub(c_[0], n);
    for (std::int64_t k = 1; k < p_; ++k) {
      if (c_[k] != head) return false;
    }
    return true;
  }

  bool is_zero() const { return equals_integer(0); }

  /// Numeric value at w = e^{2*pi*i/p}. For cross-checks only; exact
  /// decisions never go through floating point.
  std::complex<double> to_complex() const {
    std::complex<double> acc{0.0, 0.0};
    for (std::int64_t k = 0; k < p_; ++k) {
      double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p_);
      acc += static_cast<double>(c_[k]) * std::polar(1.0, angle);
    }
    return acc;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::int64_t k = 0; k < p_; ++k) {
      if (k) out += ",";
      out += std::to_string(c_[k]);
    }
    out += "]@p=" + std::to_string(p_);
    return out;
  }

 private:
  CyclotomicInt(std::int64_t p, std::vector<std::int64_t> raw) : p_(p), c_(std::move(raw)) {
    const std::int64_t lo = *std::min_element(c_.begin(), c_.end());
    if (lo != 0) {
      for (auto& v : c_) v = checked_sub(v, lo);
    }
  }

  static void validate_prime(std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (p >= kMaxPrime) throw capacity_error("p exceeds the 2^16 bound");
  }

  void require_same_prime(const CyclotomicInt& o) const {
    if (p_ != o.p_) throw std::invalid_argument("mixed cyclotomic primes");
  }

  std::int64_t p_;
  std::vector<std::int64_t> c_;
};

inline CyclotomicInt conj(const CyclotomicInt& a) { return a.conjugate(); }

}  // namespace pseq
