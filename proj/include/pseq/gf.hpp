#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pseq/common.hpp"

namespace pseq {

/// Element of GF(p^m) in the polynomial basis, constant term first.
/// Validity (length m, coefficients in [0, p)) is enforced by FieldCtx.
struct FieldElement {
  std::vector<std::int64_t> c;

  bool operator==(const FieldElement&) const = default;
};

/// Arithmetic context for GF(p^m): prime p, extension degree m and a monic
/// degree-m reduction polynomial. When primitivity_verified() is true the
/// residue class of x has multiplicative order exactly p^m - 1, which is
/// what the m-sequence generator requires.
class FieldCtx {
 public:
  /// Deterministic search for the first primitive polynomial, ordered
  /// lexicographically by (c_{m-1}, ..., c_1, c_0). Same (p, m) always
  /// yields the identical context.
  static FieldCtx find_primitive(std::int64_t p, int m) {
    validate_params(p, m);
    const std::int64_t order = field_order(p, m);
    const auto factors = prime_factors(order);
    std::int64_t total = order + 1;  // p^m candidate coefficient tuples
    for (std::int64_t idx = 0; idx < total; ++idx) {
      std::vector<std::int64_t> poly(m + 1, 0);
      poly[m] = 1;
      std::int64_t rest = idx;
      for (int j = 0; j < m; ++j) {
        poly[j] = rest % p;
        rest /= p;
      }
      FieldCtx candidate(p, m, poly, false);
      if (candidate.generator_has_full_order(order, factors)) {
        candidate.primitivity_verified_ = true;
        return candidate;
      }
    }
    throw std::logic_error("no primitive polynomial found");  // unreachable for valid (p, m)
  }

  /// Context with a caller-supplied reduction polynomial; rejected unless
  /// the class of x has order exactly p^m - 1.
  static FieldCtx from_poly(std::int64_t p, int m, std::vector<std::int64_t> poly) {
    validate_params(p, m);
    FieldCtx ctx(p, m, std::move(poly), false);
    const std::int64_t order = field_order(p, m);
    if (!ctx.generator_has_full_order(order, prime_factors(order))) {
      throw std::invalid_argument("reduction polynomial is not primitive over GF(" + std::to_string(p) + ")");
    }
    ctx.primitivity_verified_ = true;
    return ctx;
  }

  /// Structural validation only; primitivity_verified() stays false.
  static FieldCtx unverified(std::int64_t p, int m, std::vector<std::int64_t> poly) {
    validate_params(p, m);
    field_order(p, m);
    return FieldCtx(p, m, std::move(poly), false);
  }

  std::int64_t p() const { return p_; }
  int m() const { return m_; }
  const std::vector<std::int64_t>& reduction_poly() const { return poly_; }
  bool primitivity_verified() const { return primitivity_verified_; }
  std::int64_t order() const { return field_order(p_, m_); }

  bool operator==(const FieldCtx&) const = default;

  FieldElement zero() const { return FieldElement{std::vector<std::int64_t>(m_, 0)}; }

  FieldElement one() const { return scalar(1); }

  FieldElement scalar(std::int64_t v) const {
    std::vector<std::int64_t> c(m_, 0);
    c[0] = mod_floor(v, p_);
    return FieldElement{std::move(c)};
  }

  /// The residue class of x. For m = 1 this is the scalar -c0 mod p.
  FieldElement generator() const {
    if (m_ == 1) return scalar(-poly_[0]);
    std::vector<std::int64_t> c(m_, 0);
    c[1] = 1;
    return FieldElement{std::move(c)};
  }

  FieldElement add(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    std::vector<std::int64_t> c(m_);
    for (int i = 0; i < m_; ++i) c[i] = (a.c[i] + b.c[i]) % p_;
    return FieldElement{std::move(c)};
  }

  FieldElement mul(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    std::vector<std::int64_t> prod(2 * m_ - 1, 0);
    for (int i = 0; i < m_; ++i) {
      if (a.c[i] == 0) continue;
      for (int j = 0; j < m_; ++j) prod[i + j] += a.c[i] * b.c[j];
    }
    // Fold x^d for d >= m using x^m = -(poly_[0] + ... + poly_[m-1] x^{m-1});
    // the reduction polynomial is monic so no inversions are needed.
    for (int d = 2 * m_ - 2; d >= m_; --d) {
      std::int64_t carry = prod[d] % p_;
      if (carry == 0) continue;
      for (int j = 0; j < m_; ++j) prod[d - m_ + j] -= carry * poly_[j];
    }
    std::vector<std::int64_t> c(m_);
    for (int i = 0; i < m_; ++i) c[i] = mod_floor(prod[i], p_);
    return FieldElement{std::move(c)};
  }

  FieldElement pow(const FieldElement& a, std::int64_t e) const {
    check(a);
    if (e < 0) throw std::invalid_argument("negative exponent");
    FieldElement base = a;
    FieldElement acc = one();
    while (e > 0) {
      if (e & 1) acc = mul(acc, base);
      e >>= 1;
      if (e > 0) base = mul(base, base);
    }
    return acc;
  }

  /// Tr(a) = a + a^p + ... + a^{p^{m-1}}; lies in the prime field, and the
  /// constant coefficient is returned as a residue mod p.
  std::int64_t trace(const FieldElement& a) const {
    check(a);
    FieldElement acc = a;
    FieldElement frob = a;
    for (int i = 1; i < m_; ++i) {
      frob = pow(frob, p_);
      acc = add(acc, frob);
    }
    return acc.c[0];
  }

 private:
  FieldCtx(std::int64_t p, int m, std::vector<std::int64_t> poly, bool verified)
      : p_(p), m_(m), poly_(std::move(poly)), primitivity_verified_(verified) {
    if (poly_.size() != static_cast<std::size_t>(m_) + 1) {
      throw std::invalid_argument("reduction polynomial must have m+1 coefficients");
    }
    if (poly_[m_] != 1) throw std::invalid_argument("reduction polynomial must be monic");
    for (std::int64_t c : poly_) {
      if (c < 0 || c >= p_) throw std::invalid_argument("reduction polynomial coefficient out of range");
    }
  }

  static void validate_params(std::int64_t p, int m) {
    if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (p >= kMaxPrime) throw capacity_error("p exceeds the 2^16 bound");
    if (m < 1) throw std::invalid_argument("extension degree must be at least 1");
  }

  // p^m - 1, required to stay under 2^40 so the factored-order test is exact.
  static std::int64_t field_order(std::int64_t p, int m) {
    return checked_pow(p, m, std::int64_t{1} << 40) - 1;
  }

  void check(const FieldElement& a) const {
    if (a.c.size() != static_cast<std::size_t>(m_)) {
      throw std::invalid_argument("field element has wrong length for this context");
    }
    for (std::int64_t v : a.c) {
      if (v < 0 || v >= p_) throw std::invalid_argument("field element coefficient out of range");
    }
  }

  // Order test: x^{p^m-1} = 1 and x^{(p^m-1)/q} != 1 for every prime q
  // dividing p^m - 1. Full order of x also implies irreducibility of the
  // reduction polynomial, since a reducible quotient has fewer units.
  bool generator_has_full_order(std::int64_t order, const std::vector<std::int64_t>& factors) const {
    const FieldElement g = generator();
    const FieldElement unit = one();
    if (!(pow(g, order) == unit)) return false;
    for (std::int64_t q : factors) {
      if (pow(g, order / q) == unit) return false;
    }
    return true;
  }

  std::int64_t p_;
  int m_;
  std::vector<std::int64_t> poly_;
  bool primitivity_verified_;
};

}  // namespace pseq
