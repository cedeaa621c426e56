#include "mrhilb/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace mrhilb {

namespace {

QuadratureRule build_rule(int n) {
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Chebyshev-based initial guess for the i-th root of P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int order) {
  static std::map<int, QuadratureRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

void integrate_nodes(double a, double b,
                     const std::function<void(double, double)>& visit,
                     double max_panel, int order) {
  if (b <= a) return;
  const QuadratureRule& rule = gauss_legendre(order);
  const int panels =
      std::max(1, static_cast<int>(std::ceil((b - a) / max_panel)));
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      visit(mid + 0.5 * h * rule.nodes[i], 0.5 * h * rule.weights[i]);
  }
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double max_panel, int order) {
  double acc = 0.0;
  integrate_nodes(
      a, b, [&](double x, double w) { acc += w * f(x); }, max_panel, order);
  return acc;
}

}  // namespace mrhilb
