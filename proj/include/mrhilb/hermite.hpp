#pragma once

#include <vector>

namespace mrhilb {

// Normalized Hermite functions psi_l(x) = H_l(x) e^{-x^2/2} / sqrt(2^l l! sqrt(pi)),
// an orthonormal basis of L^2(R). Evaluated for l = 0..lmax by the stable
// normalized three-term recurrence.
std::vector<double> hermite_functions(int lmax, double x);

// Integrals \int_a^b psi_l(x) dx for l = 0..lmax, by composite Gauss-Legendre
// with panels resolving the local oscillation scale.
std::vector<double> hermite_cell_integrals(int lmax, double a, double b);

}  // namespace mrhilb
