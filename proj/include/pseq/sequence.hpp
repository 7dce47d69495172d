#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pseq/common.hpp"
#include "pseq/gf.hpp"

namespace pseq {

// Periods above this are outside desk scale and refuse to materialize.
inline constexpr std::int64_t kMaxPeriod = std::int64_t{1} << 24;

/// One full period of a purely periodic p-ary sequence; entries are residues
/// mod p, index 0 first. Immutable after construction.
class Sequence {
 public:
  Sequence(std::int64_t p, std::vector<std::int64_t> data) : p_(p), data_(std::move(data)) {
    if (!is_prime(p_)) throw std::invalid_argument("p = " + std::to_string(p_) + " is not prime");
    if (p_ >= kMaxPrime) throw capacity_error("p exceeds the 2^16 bound");
    if (data_.empty()) throw std::invalid_argument("sequence must contain at least one entry");
    if (static_cast<std::int64_t>(data_.size()) > kMaxPeriod) {
      throw capacity_error("period exceeds the 2^24 bound");
    }
    for (std::int64_t v : data_) {
      if (v < 0 || v >= p_) throw std::invalid_argument("entry " + std::to_string(v) + " not in [0, " + std::to_string(p_) + ")");
    }
  }

  std::int64_t p() const { return p_; }
  std::int64_t period() const { return static_cast<std::int64_t>(data_.size()); }
  const std::vector<std::int64_t>& data() const { return data_; }

  /// Entry a_n with the index reduced mod N.
  std::int64_t at(std::int64_t n) const { return data_[mod_floor(n, period())]; }

  bool operator==(const Sequence&) const = default;

 private:
  std::int64_t p_;
  std::vector<std::int64_t> data_;
};

/// a_n = Tr(alpha^n) for n = 0 .. p^m - 2, alpha the class of x. Requires a
/// primitivity-verified context; the starting phase is fixed at alpha^0 = 1.
inline Sequence generate_mseq(const FieldCtx& ctx) {
  if (!ctx.primitivity_verified()) {
    throw std::invalid_argument("m-sequence generation requires a primitivity-verified context");
  }
  const std::int64_t period = ctx.order();
  if (period > kMaxPeriod) throw capacity_error("period exceeds the 2^24 bound");
  std::vector<std::int64_t> data(period);
  const FieldElement alpha = ctx.generator();
  FieldElement power = ctx.one();
  for (std::int64_t n = 0; n < period; ++n) {
    data[n] = ctx.trace(power);
    power = ctx.mul(power, alpha);
  }
  return Sequence(ctx.p(), std::move(data));
}

/// Entrywise (a_n - c_prime + c) mod p. Period unchanged.
inline Sequence constant_shift(const Sequence& a, std::int64_t c_prime, std::int64_t c) {
  if (c_prime < 0 || c_prime >= a.p() || c < 0 || c >= a.p()) {
    throw std::invalid_argument("shift residues must lie in [0, p)");
  }
  std::vector<std::int64_t> data(a.data());
  const std::int64_t delta = mod_floor(c - c_prime, a.p());
  for (auto& v : data) v = (v + delta) % a.p();
  return Sequence(a.p(), std::move(data));
}

/// Entry n of the result is a_{(n+k) mod N}; k may be any integer.
inline Sequence cyclic_shift(const Sequence& a, std::int64_t k) {
  const std::int64_t n = a.period();
  const std::int64_t s = mod_floor(k, n);
  std::vector<std::int64_t> data(n);
  for (std::int64_t i = 0; i < n; ++i) data[i] = a.data()[(i + s) % n];
  return Sequence(a.p(), std::move(data));
}

/// Parse failure with 1-based line/column of the offending byte.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, std::size_t col, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t line_;
  std::size_t col_;
};

namespace detail {

// Strict cursor over the two-line sequence file format. Columns are byte
// offsets; no whitespace beyond the single mandated space is tolerated.
class SeqCursor {
 public:
  explicit SeqCursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ >= s_.size(); }
  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(line_, col_, msg); }

  void expect_literal(std::string_view lit) {
    for (char ch : lit) {
      if (done() || s_[pos_] != ch) fail("expected '" + std::string(lit) + "'");
      advance();
    }
  }

  std::int64_t expect_uint(const char* what) {
    if (done() || s_[pos_] < '0' || s_[pos_] > '9') fail(std::string("expected ") + what);
    std::int64_t v = 0;
    while (!done() && s_[pos_] >= '0' && s_[pos_] <= '9') {
      v = v * 10 + (s_[pos_] - '0');
      if (v > (std::int64_t{1} << 40)) fail(std::string(what) + " is too large");
      advance();
    }
    return v;
  }

  void expect_newline() {
    if (done() || s_[pos_] != '\n') fail("expected newline");
    advance();
  }

  bool peek_is(char ch) const { return !done() && s_[pos_] == ch; }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace detail

/// Sequence file format, bit-exact:
///   line 1: `p=<decimal prime> N=<decimal period>` with exactly one space
///   line 2: N comma-separated decimal residues, no spaces
/// The trailing newline is optional on input and always emitted.
inline Sequence parse_sequence(std::string_view text) {
  detail::SeqCursor cur(text);

  cur.expect_literal("p=");
  const std::size_t p_line = cur.line(), p_col = cur.col();
  const std::int64_t p = cur.expect_uint("p value");
  if (!is_prime(p)) throw parse_error(p_line, p_col, "p = " + std::to_string(p) + " is not prime");
  if (p >= kMaxPrime) throw parse_error(p_line, p_col, "p exceeds the 2^16 bound");
  cur.expect_literal(" ");
  cur.expect_literal("N=");
  const std::size_t n_line = cur.line(), n_col = cur.col();
  const std::int64_t n = cur.expect_uint("period");
  if (n < 1) throw parse_error(n_line, n_col, "period must be at least 1");
  if (n > kMaxPeriod) throw parse_error(n_line, n_col, "period exceeds the 2^24 bound");
  cur.expect_newline();

  std::vector<std::int64_t> data;
  data.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    if (i > 0) {
      if (!cur.peek_is(',')) cur.fail("expected " + std::to_string(n) + " entries, found " + std::to_string(i));
      cur.expect_literal(",");
    }
    const std::size_t e_line = cur.line(), e_col = cur.col();
    const std::int64_t v = cur.expect_uint("entry");
    if (v >= p) throw parse_error(e_line, e_col, "entry " + std::to_string(v) + " not in [0, " + std::to_string(p) + ")");
    data.push_back(v);
  }
  if (cur.peek_is(',')) cur.fail("more entries than the declared period " + std::to_string(n));
  if (!cur.done()) {
    cur.expect_newline();
    if (!cur.done()) cur.fail("unexpected trailing data");
  }
  return Sequence(p, std::move(data));
}

inline std::string emit_sequence(const Sequence& a) {
  std::string out = "p=" + std::to_string(a.p()) + " N=" + std::to_string(a.period()) + "\n";
  const auto& d = a.data();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(d[i]);
  }
  out += '\n';
  return out;
}

}  // namespace pseq
