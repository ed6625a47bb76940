#ifndef DIRAC_FFT_HPP
#define DIRAC_FFT_HPP

#include "dirac/common.hpp"

namespace dirac::detail {

// In-place unnormalized DFT. sign = -1: sum x_j e^{-2 pi i jm/n}; +1 the conjugate.
void fft_inplace(std::vector<cplx>& data, int sign);

// Smallest size >= n of the form 2^a 3^b 5^c.
int good_fft_size(int n);

}  // namespace dirac::detail

#endif
