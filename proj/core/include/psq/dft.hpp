#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace psq {

// In-place unscaled discrete Fourier transforms:
//   forward:  X[j] = sum_k x[k] e(-jk/M)
//   inverse:  X[j] = sum_k x[k] e(+jk/M)        (no 1/M; callers scale)
// Power-of-two lengths run on an iterative radix-2 kernel; everything else
// goes through Bluestein's chirp embedding, with the chirp phases n^2/(2M)
// reduced mod 2M in integer arithmetic so long transforms stay phase-exact.
void dft_forward(std::vector<std::complex<double>>& data);
void dft_inverse(std::vector<std::complex<double>>& data);

}  // namespace psq
