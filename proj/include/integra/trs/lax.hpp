#pragma once

#include "integra/trs/hamiltonian.hpp"

namespace integra {

enum class LaxReading { AsPrinted, Transposed };

// T_ij = prod_{m != j}(xi_i/q - xi_m) / prod_{l != j}(xi_j - xi_l) * p_i
MatrixC trs_lax(const VectorC& xi, const VectorC& p, cplx q, LaxReading reading = LaxReading::AsPrinted);

// E_k = sum of k x k principal minors, k = 0..N; det(z - T) = sum_k (-1)^k E_k z^{N-k}.
std::vector<cplx> principal_minor_sums(const MatrixC& t);

// Coefficients c_0..c_N of det(z - T) = sum_k c_k z^k.
std::vector<cplx> char_poly(const MatrixC& t);

// The char-poly coefficients of the Lax matrix are the Hamiltonians at
// t = 1/q rescaled by q^{-k(k-1)/2}.
cplx lax_normalization(cplx q, int k);
cplx lax_hamiltonian(const VectorC& xi, const VectorC& p, cplx q, int k);

} // namespace integra
