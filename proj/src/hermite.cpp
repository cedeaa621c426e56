#include "mrhilb/hermite.hpp"

#include <cmath>

#include "mrhilb/quadrature.hpp"

namespace mrhilb {

std::vector<double> hermite_functions(int lmax, double x) {
  std::vector<double> psi(static_cast<std::size_t>(lmax) + 1, 0.0);
  psi[0] = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (lmax >= 1) psi[1] = std::sqrt(2.0) * x * psi[0];
  for (int l = 1; l < lmax; ++l)
    psi[static_cast<std::size_t>(l) + 1] =
        std::sqrt(2.0 / (l + 1.0)) * x * psi[static_cast<std::size_t>(l)] -
        std::sqrt(l / (l + 1.0)) * psi[static_cast<std::size_t>(l) - 1];
  return psi;
}

std::vector<double> hermite_cell_integrals(int lmax, double a, double b) {
  std::vector<double> acc(static_cast<std::size_t>(lmax) + 1, 0.0);
  // Oscillation wavelength near the bulk is ~ 2*pi/sqrt(2*lmax+1).
  const double panel = std::min(0.25, 2.0 / std::sqrt(2.0 * lmax + 1.0));
  integrate_nodes(a, b, [&](double x, double w) {
    const std::vector<double> psi = hermite_functions(lmax, x);
    for (std::size_t l = 0; l < acc.size(); ++l) acc[l] += w * psi[l];
  }, panel, 12);
  return acc;
}

}  // namespace mrhilb
