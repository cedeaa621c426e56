#include "mrhilb/mra_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace mrhilb {

namespace {

// (-1)^n for possibly negative n
double parity_sign(std::int64_t n) { return (n % 2 == 0) ? 1.0 : -1.0; }

StateVector pi_tau_n(const UnitaryPair& pair, const StateVector& phi,
                     std::int64_t n) {
  return pair.pi_apply(pair.tau(phi, n));
}

}  // namespace

ScalingSystem extract_tsr_coefficients(const StateVector& phi,
                                       const UnitaryPair& pair,
                                       std::int64_t n_lo, std::int64_t n_hi,
                                       const ExtractOptions& opts) {
  if (n_hi < n_lo)
    throw MraError(errc::configuration, "empty extraction window");
  ScalingSystem sys;
  sys.phi = phi;
  sys.pair = pair;
  sys.h_offset = n_lo;
  sys.h.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
  for (std::int64_t n = n_lo; n <= n_hi; ++n)
    sys.h.push_back(inner_product(phi, pi_tau_n(pair, phi, n)));
  if (opts.check_tails) {
    if (std::abs(sys.h.front()) > opts.structural_zero)
      throw MraError(errc::window_too_small,
                     "boundary coefficient h_" + std::to_string(n_lo) +
                         " is non-negligible; widen the window");
    if (std::abs(sys.h.back()) > opts.structural_zero)
      throw MraError(errc::window_too_small,
                     "boundary coefficient h_" + std::to_string(n_hi) +
                         " is non-negligible; widen the window");
    // Trim structural zeros so quadrature noise does not inflate K.
    std::int64_t lo = n_lo, hi = n_hi;
    while (lo < hi && std::abs(sys.h_at(lo)) <= opts.structural_zero) ++lo;
    while (hi > lo && std::abs(sys.h_at(hi)) <= opts.structural_zero) --hi;
    std::vector<cplx> trimmed;
    for (std::int64_t n = lo; n <= hi; ++n) trimmed.push_back(sys.h_at(n));
    sys.h = std::move(trimmed);
    sys.h_offset = lo;
  }
  sys.h_real = std::all_of(sys.h.begin(), sys.h.end(), [&](const cplx& c) {
    return std::abs(c.imag()) <= opts.structural_zero;
  });
  return sys;
}

double tsr_residual(const ScalingSystem& sys) {
  std::vector<std::pair<cplx, StateVector>> terms;
  terms.emplace_back(cplx{1.0, 0.0}, sys.phi);
  for (std::int64_t n = sys.h_lo(); n <= sys.h_hi(); ++n)
    terms.emplace_back(-sys.h_at(n), pi_tau_n(sys.pair, sys.expansion_base(), n));
  return combine(terms).norm();
}

KMatrix build_k_matrix(const ScalingSystem& sys, int radius,
                       bool parity_on_columns) {
  const std::int64_t window_radius =
      std::max(std::llabs(sys.h_lo()), std::llabs(sys.h_hi()));
  if (radius < window_radius)
    throw MraError(errc::truncation_too_small,
                   "truncation radius " + std::to_string(radius) +
                       " smaller than h window radius " +
                       std::to_string(window_radius));
  KMatrix K;
  K.radius = radius;
  K.parity_on_columns = parity_on_columns;
  const int dim = 2 * radius + 1;
  K.entries.resize(dim, dim);
  for (int li = 0; li < dim; ++li) {
    const std::int64_t l = li - radius;
    for (int ni = 0; ni < dim; ++ni) {
      const std::int64_t n = ni - radius;
      const std::int64_t parity_index = parity_on_columns ? n : l;
      K.entries(li, ni) = (parity_index % 2 == 0)
                              ? sys.h_at(l - n)
                              : parity_sign(l - 1) * sys.h_at(-l + n);
    }
  }
  return K;
}

std::vector<double> k_singular_values(const KMatrix& K) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(K.entries);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

KInvertibilityReport assess_k_invertibility(const ScalingSystem& sys,
                                            const std::vector<int>& radii,
                                            double floor) {
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1])
      throw MraError(errc::configuration, "radii must be strictly increasing");
  KInvertibilityReport rep;
  rep.floor = floor;
  bool ok = !radii.empty();
  for (int M : radii) {
    const std::vector<double> sv = k_singular_values(build_k_matrix(sys, M));
    KInvertibilityRow row;
    row.radius = M;
    row.smallest_singular = sv.empty() ? 0.0 : sv.back();
    const double largest = sv.empty() ? 0.0 : sv.front();
    row.condition = row.smallest_singular > 0.0
                        ? largest / row.smallest_singular
                        : std::numeric_limits<double>::infinity();
    ok = ok && row.smallest_singular >= floor;
    rep.rows.push_back(row);
  }
  rep.numerically_invertible = ok;
  return rep;
}

WaveletFamily construct_mother_wavelet(const ScalingSystem& sys,
                                       WaveletVariant variant) {
  if (!sys.formal) {
    const double resid = tsr_residual(sys);
    if (resid > 10.0 * sys.phi.space->tolerance)
      throw MraError(errc::configuration,
                     "scaling system TSR residual " + std::to_string(resid) +
                         " too large for wavelet construction");
  }
  std::vector<std::pair<cplx, StateVector>> terms;
  if (variant == WaveletVariant::standard) {
    // coefficients (-1)^(n-1) h_{-n-1}: n runs over -h_hi-1 .. -h_lo-1
    for (std::int64_t n = -sys.h_hi() - 1; n <= -sys.h_lo() - 1; ++n) {
      const cplx c = parity_sign(n - 1) * sys.h_at(-n - 1);
      if (std::abs(c) == 0.0) continue;
      terms.emplace_back(c, pi_tau_n(sys.pair, sys.expansion_base(), n));
    }
  } else {
    // coefficients (-1)^n h_{-n+1}: n runs over -h_hi+1 .. -h_lo+1
    for (std::int64_t n = -sys.h_hi() + 1; n <= -sys.h_lo() + 1; ++n) {
      const cplx c = parity_sign(n) * sys.h_at(-n + 1);
      if (std::abs(c) == 0.0) continue;
      terms.emplace_back(c, pi_tau_n(sys.pair, sys.expansion_base(), n));
    }
  }
  WaveletFamily fam;
  fam.psi = combine(terms);
  fam.variant = variant;
  fam.system = sys;
  return fam;
}

OrthonormalityReport pairwise_orthonormality(const StateVector& v,
                                             const UnitaryPair& pair,
                                             std::int64_t kmin,
                                             std::int64_t kmax,
                                             const ScalingSystem* sys,
                                             double tol) {
  if (tol <= 0.0) tol = pair.model->tolerance;
  OrthonormalityReport rep;
  double coeff_dev = 0.0, disagreement = 0.0;
  for (std::int64_t k = kmin; k <= kmax; ++k) {
    const cplx target = k == 0 ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    const cplx vec_side = inner_product(v, pair.tau(v, k));
    const double dev = std::abs(vec_side - target);
    if (dev > rep.max_deviation) {
      rep.max_deviation = dev;
      rep.worst_k = k;
    }
    if (sys) {
      const cplx coeff_side = filter_autocorrelation(*sys, k);
      coeff_dev = std::max(coeff_dev, std::abs(coeff_side - target));
      disagreement = std::max(disagreement, std::abs(coeff_side - vec_side));
    }
  }
  if (sys) {
    rep.coefficient_side_deviation = coeff_dev;
    rep.route_disagreement = disagreement;
  }
  rep.pass = rep.max_deviation < tol;
  return rep;
}

cplx filter_autocorrelation(const ScalingSystem& sys, std::int64_t k) {
  cplx s{0.0, 0.0};
  for (std::int64_t n = sys.h_lo(); n <= sys.h_hi(); ++n)
    s += sys.h_at(n) * std::conj(sys.h_at(n - 2 * k));
  return s;
}

CrossOrthogonalityReport cross_orthogonality(const WaveletFamily& fam,
                                             std::int64_t kmin,
                                             std::int64_t kmax, double tol) {
  const UnitaryPair& pair = fam.system.pair;
  if (tol <= 0.0) tol = pair.model->tolerance;
  CrossOrthogonalityReport rep;
  rep.h_real = fam.system.h_real;
  for (std::int64_t k = kmin; k <= kmax; ++k) {
    const cplx ip = inner_product(fam.psi, pair.tau(fam.system.phi, k));
    rep.values[k] = ip;
    if (std::abs(ip) > rep.max_abs) {
      rep.max_abs = std::abs(ip);
      rep.worst_k = k;
    }
  }
  rep.in_w0 = rep.max_abs < tol;
  return rep;
}

WaveletFamilyGrid generate_wavelet_family(const WaveletFamily& fam, int j_lo,
                                          int j_hi, std::int64_t k_lo,
                                          std::int64_t k_hi) {
  WaveletFamilyGrid grid;
  const UnitaryPair& pair = fam.system.pair;
  for (int j = j_lo; j <= j_hi; ++j)
    for (std::int64_t k = k_lo; k <= k_hi; ++k)
      grid.members.push_back({j, k, pair.pi(pair.tau(fam.psi, k), j)});
  for (std::size_t a = 0; a < grid.members.size(); ++a)
    for (std::size_t b = a; b < grid.members.size(); ++b) {
      const cplx g = inner_product(grid.members[a].vec, grid.members[b].vec);
      const double dev =
          std::abs(g - (a == b ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));
      grid.gram_deviation = std::max(grid.gram_deviation, dev);
    }
  return grid;
}

}  // namespace mrhilb
