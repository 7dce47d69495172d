#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

namespace pseq::detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
  std::size_t r = 1;
  while (r < n) r <<= 1;
  return r;
}

// In-place iterative radix-2 transform; length must be a power of two.
// invert only flips the twiddle sign, scaling is the caller's business.
inline void fft_pow2(std::vector<std::complex<double>>& a, bool invert) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = 2.0 * std::numbers::pi / static_cast<double>(len) * (invert ? 1.0 : -1.0);
    const std::complex<double> wlen = std::polar(1.0, angle);
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w{1.0, 0.0};
      for (std::size_t j = 0; j < len / 2; ++j) {
        const auto u = a[i + j];
        const auto v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// Bluestein chirp-z: DFT of arbitrary length N as a power-of-two convolution.
// X_k = w_k * sum_n (x_n w_n) chirp(k-n), with w_n = e^{-i pi n^2 / N};
// n^2 is reduced mod 2N before the angle is formed to keep precision.
inline std::vector<std::complex<double>> dft_bluestein(const std::vector<std::complex<double>>& x, bool invert) {
  const std::size_t n = x.size();
  const std::size_t m = next_pow2(2 * n - 1);
  const double sign = invert ? 1.0 : -1.0;

  std::vector<std::complex<double>> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t sq = (static_cast<std::uint64_t>(k) * k) % (2 * n);
    chirp[k] = std::polar(1.0, sign * std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n));
  }

  std::vector<std::complex<double>> a(m, {0.0, 0.0});
  std::vector<std::complex<double>> b(m, {0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  for (std::size_t k = 0; k < n; ++k) {
    b[k] = std::conj(chirp[k]);
    if (k > 0) b[m - k] = std::conj(chirp[k]);
  }
  fft_pow2(a, false);
  fft_pow2(b, false);
  for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
  fft_pow2(a, true);

  std::vector<std::complex<double>> out(n);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * scale * chirp[k];
  return out;
}

/// DFT of arbitrary length. Forward: X_k = sum_n x_n e^{-2 pi i nk/N}.
/// Inverse includes the 1/N scaling.
inline std::vector<std::complex<double>> dft(std::vector<std::complex<double>> x, bool invert) {
  const std::size_t n = x.size();
  if (n == 0) return x;
  std::vector<std::complex<double>> out;
  if (is_pow2(n)) {
    fft_pow2(x, invert);
    out = std::move(x);
  } else {
    out = dft_bluestein(x, invert);
  }
  if (invert) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= scale;
  }
  return out;
}

}  // namespace pseq::detail
