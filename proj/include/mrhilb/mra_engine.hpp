#pragma once

#include <map>
#include <optional>

#include <Eigen/Dense>

#include "mrhilb/operator_algebra.hpp"

namespace mrhilb {

// Scaling vector Phi with its two-scale coefficient window
// h_n = <Phi, pi tau^n Phi>. `formal` marks systems (the complex
// counterexample) whose Phi is defined through the TSR for coefficient-side
// checks only and is not claimed to satisfy it.
struct ScalingSystem {
  StateVector phi;
  UnitaryPair pair;
  std::vector<cplx> h;
  std::int64_t h_offset = 0;  // index n of h.front()
  bool h_real = true;
  bool formal = false;
  // Formal systems expand pi tau^n terms over this orthonormal carrier
  // instead of phi itself (phi is then the h-combination of the carrier
  // family). Absent for genuine systems.
  std::optional<StateVector> expansion_carrier;

  const StateVector& expansion_base() const {
    return expansion_carrier ? *expansion_carrier : phi;
  }

  cplx h_at(std::int64_t n) const {
    const std::int64_t i = n - h_offset;
    return (i >= 0 && i < static_cast<std::int64_t>(h.size()))
               ? h[static_cast<std::size_t>(i)]
               : cplx{0.0, 0.0};
  }
  std::int64_t h_lo() const { return h_offset; }
  std::int64_t h_hi() const {
    return h_offset + static_cast<std::int64_t>(h.size()) - 1;
  }
};

struct ExtractOptions {
  bool check_tails = true;  // finite-dim models use a periodic index set
  double structural_zero = kStructuralZero;
};

// h_n = <Phi, pi tau^n Phi> over the window; the boundary coefficients must
// be structural zeros unless tail checking is disabled.
ScalingSystem extract_tsr_coefficients(const StateVector& phi,
                                       const UnitaryPair& pair,
                                       std::int64_t n_lo, std::int64_t n_hi,
                                       const ExtractOptions& opts = {});

// || Phi - sum_n h_n pi tau^n Phi ||
double tsr_residual(const ScalingSystem& sys);

// Doubly-indexed filter matrix, truncated to l, n in [-M, M]. The parity
// branch is taken on the column index n as printed; parity_on_columns=false
// exposes the transposed convention for sensitivity runs.
struct KMatrix {
  Eigen::MatrixXcd entries;
  int radius = 0;
  bool parity_on_columns = true;
};

KMatrix build_k_matrix(const ScalingSystem& sys, int radius,
                       bool parity_on_columns = true);

std::vector<double> k_singular_values(const KMatrix& K);

struct KInvertibilityRow {
  int radius = 0;
  double smallest_singular = 0.0;
  double condition = 0.0;
};

struct KInvertibilityReport {
  std::vector<KInvertibilityRow> rows;
  double floor = 0.0;
  bool numerically_invertible = false;
};

// Probes invertibility of the (infinite) K matrix through a radius sweep:
// verdict holds iff the smallest singular value stays above `floor` at every
// truncation.
KInvertibilityReport assess_k_invertibility(const ScalingSystem& sys,
                                            const std::vector<int>& radii,
                                            double floor = 0.1);

enum class WaveletVariant { standard, alternate };

struct WaveletFamily {
  StateVector psi;
  WaveletVariant variant = WaveletVariant::standard;
  ScalingSystem system;
};

// standard: Psi = sum_n (-1)^(n-1) h_{-n-1} pi tau^n Phi
// alternate: Psi~ = sum_n (-1)^n h_{-n+1} pi tau^n Phi
WaveletFamily construct_mother_wavelet(const ScalingSystem& sys,
                                       WaveletVariant variant);

struct OrthonormalityReport {
  double max_deviation = 0.0;
  std::int64_t worst_k = 0;
  // Coefficient-side deviation of sum_n h_n conj(h_{n-2k}) - delta_{k,0},
  // and its worst disagreement with the vector-side inner products.
  std::optional<double> coefficient_side_deviation;
  std::optional<double> route_disagreement;
  bool pass = false;
};

// max_k | <v, tau^k v> - delta_{k,0} |, optionally cross-checked against the
// coefficient-side identity when a scaling system is supplied.
OrthonormalityReport pairwise_orthonormality(const StateVector& v,
                                             const UnitaryPair& pair,
                                             std::int64_t kmin, std::int64_t kmax,
                                             const ScalingSystem* sys = nullptr,
                                             double tol = 0.0);

struct CrossOrthogonalityReport {
  double max_abs = 0.0;
  std::int64_t worst_k = 0;
  std::map<std::int64_t, cplx> values;  // k -> <Psi, tau^k Phi>
  bool h_real = true;
  bool in_w0 = false;  // verdict; informational when h is complex
};

CrossOrthogonalityReport cross_orthogonality(const WaveletFamily& fam,
                                             std::int64_t kmin,
                                             std::int64_t kmax,
                                             double tol = 0.0);

// Coefficient-side orthonormality sum for a bare filter window:
// sum_n h_n conj(h_{n-2k}).
cplx filter_autocorrelation(const ScalingSystem& sys, std::int64_t k);

struct IndexedVector {
  int j = 0;
  std::int64_t k = 0;
  StateVector vec;
};

struct WaveletFamilyGrid {
  std::vector<IndexedVector> members;  // ordered by (j, k)
  double gram_deviation = 0.0;
};

// pi^j tau^k Psi over the index window, with the family Gram deviation.
WaveletFamilyGrid generate_wavelet_family(const WaveletFamily& fam, int j_lo,
                                          int j_hi, std::int64_t k_lo,
                                          std::int64_t k_hi);

}  // namespace mrhilb
