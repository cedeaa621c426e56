#include "mrhilb/approximation.hpp"

#include <algorithm>
#include <cmath>

namespace mrhilb {

namespace {

StateVector ladder_vector(const UnitaryPair& pair, const StateVector& base,
                          int j, std::int64_t k) {
  return pair.pi(pair.tau(base, k), -j);
}

}  // namespace

ProjectionResult project_level(const StateVector& f, int j,
                               const ScalingSystem& sys, std::int64_t k_lo,
                               std::int64_t k_hi) {
  if (k_hi < k_lo)
    throw MraError(errc::configuration, "empty projection window");
  ProjectionResult out;
  out.k_lo = k_lo;
  out.k_hi = k_hi;
  std::vector<std::pair<cplx, StateVector>> terms;
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const StateVector e = ladder_vector(sys.pair, sys.phi, j, k);
    const cplx c = inner_product(f, e);
    out.coefficients.push_back(c);
    if (std::abs(c) > 0.0) terms.emplace_back(c, e);
    if (k == k_lo || k == k_hi)
      out.boundary_magnitude = std::max(out.boundary_magnitude, std::abs(c));
  }
  out.projected = terms.empty() ? scaled(f, cplx{0.0, 0.0}) : combine(terms);
  out.window_adequate = out.boundary_magnitude < f.space->tolerance;
  return out;
}

DecompositionReport detail_coefficients(const StateVector& f,
                                        const WaveletFamily& fam, int j_lo,
                                        int j_hi, std::int64_t k_lo,
                                        std::int64_t k_hi) {
  if (!fam.system.h_real)
    throw MraError(errc::unsupported_family,
                   "detail decomposition requires a real filter window; this "
                   "family's translates need not be orthogonal");
  if (j_hi < j_lo || k_hi < k_lo)
    throw MraError(errc::configuration, "empty decomposition window");
  const ScalingSystem& sys = fam.system;
  DecompositionReport rep;
  rep.model_id = f.space->id;
  rep.variant = fam.variant;
  rep.j_lo = j_lo;
  rep.j_hi = j_hi;
  rep.k_lo = k_lo;
  rep.k_hi = k_hi;

  const double f2 = f.norm() * f.norm();
  const double denom = std::max(f2, 1e-300);
  std::map<int, double> proj2;  // j -> ||P_j f||^2, including j_lo - 1
  for (int j = j_lo - 1; j <= j_hi; ++j) {
    const ProjectionResult p = project_level(f, j, sys, k_lo, k_hi);
    rep.window_adequate = rep.window_adequate && p.window_adequate;
    const double n = p.projected.norm();
    proj2[j] = n * n;
    if (j >= j_lo) {
      rep.projection_norms[j] = n;
      const double r =
          combine({{cplx{1.0, 0.0}, f}, {cplx{-1.0, 0.0}, p.projected}})
              .norm();
      rep.residuals[j] = r;
    }
  }

  double cumulative = 0.0;
  for (int j = j_lo; j <= j_hi; ++j) {
    double level_energy = 0.0;
    for (std::int64_t l = k_lo; l <= k_hi; ++l) {
      const cplx c = inner_product(f, ladder_vector(sys.pair, fam.psi, j, l));
      rep.detail[{j, l}] = c;
      level_energy += std::norm(c);
      if (l == k_lo || l == k_hi)
        rep.window_adequate =
            rep.window_adequate && std::abs(c) < f.space->tolerance;
    }
    rep.energy_split_error =
        std::max(rep.energy_split_error,
                 std::abs(proj2[j - 1] - proj2[j] - level_energy) / denom);
    cumulative += level_energy;
    const double r = rep.residuals[j];
    rep.tail_identity_error = std::max(
        rep.tail_identity_error, std::abs(r * r - cumulative) / denom);
  }
  rep.pass = rep.window_adequate && rep.energy_split_error < 1e-9;
  return rep;
}

ReconstructionResult reconstruct(const DecompositionReport& report,
                                 const WaveletFamily& fam,
                                 const StateVector& coarse,
                                 double drop_below) {
  if (report.model_id != fam.psi.space->id ||
      report.variant != fam.variant)
    throw MraError(errc::window_mismatch,
                   "report was built from a different family (model " +
                       report.model_id + ")");
  ReconstructionResult out;
  std::vector<std::pair<cplx, StateVector>> terms;
  terms.emplace_back(cplx{1.0, 0.0}, coarse);
  for (const auto& [jl, c] : report.detail) {
    if (std::abs(c) < drop_below || std::abs(c) == 0.0) {
      out.dropped_energy += std::norm(c);
      continue;
    }
    terms.emplace_back(
        c, ladder_vector(fam.system.pair, fam.psi, jl.first, jl.second));
  }
  out.vec = combine(terms);
  return out;
}

IntersectionDiagnostic intersection_diagnostic(const StateVector& f,
                                               const ScalingSystem& sys,
                                               int jmax) {
  if (f.norm() < 1e-300)
    throw MraError(errc::configuration,
                   "intersection diagnostic needs a nonzero vector");
  if (jmax < 0)
    throw MraError(errc::configuration, "jmax must be >= 0");
  IntersectionDiagnostic d;
  const bool grid = f.space->kind == SpaceKind::dyadic_line ||
                    f.space->kind == SpaceKind::warped_interval;
  if (grid) {
    const double w = std::pow(2.0, -f.level);
    for (const cplx& c : f.coeffs) d.l1_norm += std::abs(c) * w;
  }
  const double lo = static_cast<double>(f.offset) * std::pow(2.0, -f.level);
  const double hi = static_cast<double>(f.end()) * std::pow(2.0, -f.level);
  d.monotone = true;
  d.bound_ok = grid;
  for (int j = 0; j <= jmax; ++j) {
    const double cell = std::pow(2.0, j);
    std::int64_t k_lo = static_cast<std::int64_t>(std::floor(lo / cell));
    std::int64_t k_hi = static_cast<std::int64_t>(std::ceil(hi / cell)) - 1;
    const std::int64_t k_cap =
        static_cast<std::int64_t>(std::floor(f.space->extent / cell));
    k_lo = std::max(k_lo, -k_cap);
    k_hi = std::min(k_hi, k_cap - 1);
    const double n =
        project_level(f, j, sys, k_lo, std::max(k_lo, k_hi)).projected.norm();
    d.norms.push_back(n);
    if (grid && n * n > std::pow(2.0, -j) * d.l1_norm * d.l1_norm + 1e-12)
      d.bound_ok = false;
    if (j > 0 && n > d.norms[static_cast<std::size_t>(j) - 1] + 1e-10)
      d.monotone = false;
  }
  // log-linear fit of the decay rate over strictly positive norms
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (int j = 0; j <= jmax; ++j) {
    const double n = d.norms[static_cast<std::size_t>(j)];
    if (n < 1e-14) continue;
    const double y = std::log2(n);
    sx += j;
    sy += y;
    sxx += static_cast<double>(j) * j;
    sxy += j * y;
    ++m;
  }
  if (m >= 2 && m * sxx - sx * sx > 0.0)
    d.fitted_decay_rate = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return d;
}

DensityDiagnostic density_diagnostic(const std::vector<StateVector>& samples,
                                     const ScalingSystem& sys, int j_lo,
                                     int j_hi, std::int64_t k_lo,
                                     std::int64_t k_hi) {
  if (samples.empty())
    throw MraError(errc::configuration, "density diagnostic needs samples");
  DensityDiagnostic d;
  std::vector<StateVector> translates;
  for (std::int64_t k = k_lo; k <= k_hi; ++k)
    translates.push_back(sys.pair.tau(sys.phi, k));
  for (const StateVector& f : samples) {
    const double n = f.norm();
    if (n < 1e-300)
      throw MraError(errc::configuration,
                     "density diagnostic needs nonzero samples");
    DensityDiagnostic::Entry e;
    for (int j = j_lo; j <= j_hi; ++j) {
      const StateVector fj = sys.pair.pi(f, j);
      for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        const double r =
            std::abs(inner_product(
                fj, translates[static_cast<std::size_t>(k - k_lo)])) /
            n;
        if (r > e.ratio) {
          e.ratio = r;
          e.j0 = j;
          e.k0 = k;
        }
      }
    }
    d.per_sample.push_back(e);
  }
  d.min_ratio = d.per_sample.front().ratio;
  for (const auto& e : d.per_sample) d.min_ratio = std::min(d.min_ratio, e.ratio);
  return d;
}

}  // namespace mrhilb
