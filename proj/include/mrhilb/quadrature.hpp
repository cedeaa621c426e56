#pragma once

#include <functional>
#include <vector>

namespace mrhilb {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre nodes/weights by Newton iteration on the Legendre
// recurrence. Rules are cached per order.
const QuadratureRule& gauss_legendre(int order);

// Composite Gauss-Legendre over [a, b] with panels no wider than max_panel.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double max_panel = 0.2, int order = 16);

// Vector-valued variant: accumulates weight * f(node) into `acc` through the
// callback, which receives (node, weight).
void integrate_nodes(double a, double b,
                     const std::function<void(double, double)>& visit,
                     double max_panel = 0.2, int order = 16);

}  // namespace mrhilb
