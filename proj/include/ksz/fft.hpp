#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ksz {
using cplx = std::complex<double>;

/// Values of P(z) = sum_t coeffs[t] z^exps[t] at the L-th roots of unity
/// z_j = exp(2 pi i j / L), j = 0..L-1. Exponents may be negative or exceed
/// L; they are folded mod L. Uses an unnormalized backward DFT of length L.
/// Safe to call from several threads.
std::vector<cplx> roots_of_unity_values(std::span<const int> exps, std::span<const cplx> coeffs, std::size_t L);

}  // namespace ksz
