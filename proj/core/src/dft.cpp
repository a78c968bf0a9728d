#include "psq/dft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace psq {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool is_pow2(std::size_t n) { return n && (n & (n - 1)) == 0; }

// Iterative radix-2 transform, sign = -1 forward / +1 inverse, unscaled.
void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
  std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = sign * two_pi / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        // Direct twiddle per butterfly column: costs a sincos but keeps the
        // phase error flat across stages (recurrences drift over 2^15 steps).
        std::complex<double> w =
            std::polar(1.0, ang * static_cast<double>(j));
        std::complex<double> u = a[i + j];
        std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

// Bluestein chirp embedding for arbitrary length: e(-jk/M) splits over
// j^2 + k^2 - (j-k)^2, turning the transform into one circular convolution.
// The chirp exponents n^2 are reduced mod 2M in integers first.
void bluestein(std::vector<std::complex<double>>& a, int sign) {
  std::size_t m = a.size();
  std::size_t l = 1;
  while (l < 2 * m - 1) l <<= 1;

  std::vector<std::complex<double>> chirp(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::uint64_t r = (static_cast<std::uint64_t>(k) * k) % (2 * m);
    chirp[k] = std::polar(
        1.0, sign * std::numbers::pi * static_cast<double>(r) /
                 static_cast<double>(m));
  }

  std::vector<std::complex<double>> u(l, {0.0, 0.0}), v(l, {0.0, 0.0});
  for (std::size_t k = 0; k < m; ++k) u[k] = a[k] * chirp[k];
  v[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < m; ++k)
    v[k] = v[l - k] = std::conj(chirp[k]);

  fft_pow2(u, -1);
  fft_pow2(v, -1);
  for (std::size_t k = 0; k < l; ++k) u[k] *= v[k];
  fft_pow2(u, +1);
  double inv_l = 1.0 / static_cast<double>(l);
  for (std::size_t j = 0; j < m; ++j) a[j] = chirp[j] * u[j] * inv_l;
}

void dft(std::vector<std::complex<double>>& a, int sign) {
  if (a.size() < 2) return;
  if (is_pow2(a.size()))
    fft_pow2(a, sign);
  else
    bluestein(a, sign);
}

}  // namespace

void dft_forward(std::vector<std::complex<double>>& data) { dft(data, -1); }
void dft_inverse(std::vector<std::complex<double>>& data) { dft(data, +1); }

}  // namespace psq
