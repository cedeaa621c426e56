#pragma once

#include <map>

#include "mrhilb/mra_engine.hpp"

namespace mrhilb {

// Resolution ladder convention: level j holds the span of pi^-j tau^k Phi,
// so j decreasing means finer. The detail space at level j is spanned by
// pi^-j tau^l Psi and splits the step from level j to level j-1.

struct ProjectionResult {
  StateVector projected;
  std::vector<cplx> coefficients;  // <f, pi^-j tau^k Phi> for k in the window
  std::int64_t k_lo = 0;
  std::int64_t k_hi = 0;
  double boundary_magnitude = 0.0;  // largest |coefficient| at a window edge
  bool window_adequate = false;
};

// P_j f over the translation window [k_lo, k_hi].
ProjectionResult project_level(const StateVector& f, int j,
                               const ScalingSystem& sys, std::int64_t k_lo,
                               std::int64_t k_hi);

struct DecompositionReport {
  std::string model_id;
  WaveletVariant variant = WaveletVariant::standard;
  int j_lo = 0;
  int j_hi = 0;
  std::int64_t k_lo = 0;
  std::int64_t k_hi = 0;
  std::map<std::pair<int, std::int64_t>, cplx> detail;  // (j, l) -> c_{j,l}
  std::map<int, double> projection_norms;               // j -> ||P_j f||
  std::map<int, double> residuals;                      // j -> ||f - P_j f||
  // worst per-level defect of ||P_{j-1}f||^2 = ||P_j f||^2 + sum_l |c_{j,l}|^2,
  // relative to ||f||^2
  double energy_split_error = 0.0;
  // worst defect of ||f - P_j f||^2 = sum_{k in [j_lo, j]} sum_l |c_{k,l}|^2,
  // relative to ||f||^2 (meaningful when f lives at resolution j_lo - 1 or
  // coarser)
  double tail_identity_error = 0.0;
  bool window_adequate = true;
  bool pass = false;
};

// Detail coefficients c_{j,l} = <f, pi^-j tau^l Psi> over the index window,
// with the per-level energy-split and tail identities checked. Requires a
// real-filter family (unsupported_family otherwise).
DecompositionReport detail_coefficients(const StateVector& f,
                                        const WaveletFamily& fam, int j_lo,
                                        int j_hi, std::int64_t k_lo,
                                        std::int64_t k_hi);

struct ReconstructionResult {
  StateVector vec;
  double dropped_energy = 0.0;  // sum of |c|^2 over dropped coefficients
};

// coarse + sum_{j,l} c_{j,l} pi^-j tau^l Psi, skipping coefficients with
// |c| < drop_below. The family must match the one the report was built from.
ReconstructionResult reconstruct(const DecompositionReport& report,
                                 const WaveletFamily& fam,
                                 const StateVector& coarse,
                                 double drop_below = 0.0);

struct IntersectionDiagnostic {
  std::vector<double> norms;  // ||P_j f|| for j = 0..jmax
  double l1_norm = 0.0;       // grid 1-norm of f (grid models only)
  double fitted_decay_rate = 0.0;  // slope of log2||P_j f|| against j
  bool bound_ok = false;  // ||P_j f||^2 <= 2^-j ||f||_1^2 at every level
  bool monotone = false;  // norms non-increasing in j
};

// Coarsening sweep quantifying how fast the projections of f die out; the
// translation window at each level is derived from the support of f.
IntersectionDiagnostic intersection_diagnostic(const StateVector& f,
                                               const ScalingSystem& sys,
                                               int jmax);

struct DensityDiagnostic {
  struct Entry {
    double ratio = 0.0;  // max |<pi^j f, tau^k Phi>| / ||f||
    int j0 = 0;
    std::int64_t k0 = 0;
  };
  std::vector<Entry> per_sample;
  double min_ratio = 0.0;  // empirical lower-bound candidate; no claim made
};

// Window scan of |<pi^j f, tau^k Phi>| / ||f|| per sample; reports the
// minimum over samples of the per-sample maximum.
DensityDiagnostic density_diagnostic(const std::vector<StateVector>& samples,
                                     const ScalingSystem& sys, int j_lo,
                                     int j_hi, std::int64_t k_lo,
                                     std::int64_t k_hi);

}  // namespace mrhilb
