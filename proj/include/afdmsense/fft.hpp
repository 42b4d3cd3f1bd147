// fft.hpp - thin FFTW3 wrapper with a process-wide plan cache
#pragma once

#include "afdmsense/types.hpp"

namespace afdmsense::fft {

/// Unnormalized DFT: X[k] = sum_n x[n] e^{-j2pi kn/N}.
CVec forward(const CVec& x);

/// Unnormalized inverse DFT: x[n] = sum_k X[k] e^{+j2pi kn/N} (no 1/N).
CVec backward(const CVec& x);

/// Circular convolution of equal-length vectors.
CVec circular_convolve(const CVec& a, const CVec& b);

}  // namespace afdmsense::fft
