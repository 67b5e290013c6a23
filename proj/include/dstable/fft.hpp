#ifndef DSTABLE_FFT_HPP
#define DSTABLE_FFT_HPP

#include <complex>
#include <vector>

namespace dstable {

/// In-place radix-2 forward DFT: a[k] <- sum_j a[j] exp(-2*pi*i*j*k/N).
/// N must be a power of two.
void fft_forward(std::vector<std::complex<double>>& a);

} // namespace dstable

#endif
