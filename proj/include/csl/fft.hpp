#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace csl::detail {

bool is_pow2(std::size_t n);

// In-place radix-2 FFT.  n must be a power of two.  The inverse includes
// the 1/n normalization, so fft(ifft(a)) == a.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);

}  // namespace csl::detail
