#pragma once

#include <complex>

namespace boxembed::detail {

/// Unnormalized 2D c2c transform of an m x m row-major array.
/// forward: out_p = sum_j in_j exp(-2*pi*i*(j.p)/m); backward flips the sign.
/// Plans are cached per grid size; execution is thread-safe.
void fft2(int m, const std::complex<double>* in, std::complex<double>* out, bool forward);

}  // namespace boxembed::detail
