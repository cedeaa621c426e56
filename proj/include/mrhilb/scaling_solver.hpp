#pragma once

#include <Eigen/Dense>

#include "mrhilb/mra_engine.hpp"

namespace mrhilb {

struct EigenSystem {
  std::vector<cplx> values;     // unimodular, pairwise distinct
  Eigen::MatrixXcd vectors;     // unit eigenvectors, one per column
  double max_residual = 0.0;    // worst ||tau v_l - t_l v_l||
};

// Diagonalizes the translation generator of a finite-dimensional pair by
// applying it to the standard basis. Refuses spectra with eigenvalues closer
// than 1e-10 (degenerate_spectrum).
EigenSystem eigensystem_of_tau(const UnitaryPair& pair);

struct MomentSystem {
  std::vector<cplx> eigenvalues;  // t_l
  Eigen::MatrixXcd E;             // E(k, l) = t_l^k, k = 0..N-1
  Eigen::VectorXcd u;             // (1, 0, ..., 0)
  double condition = 0.0;
};

// Builds the moment system E gamma = u for the squared moduli of the
// eigen-coordinates. Eigenvalues must be distinct and nonzero; the dimension
// is capped (the system's conditioning grows exponentially).
MomentSystem build_moment_system(const std::vector<cplx>& eigenvalues,
                                 int dimension_cap = 64);

struct ModuliSolution {
  std::vector<cplx> gamma_exact;  // structured Vandermonde solve of E g = u
  std::vector<double> gamma;      // Re(gamma_exact): the moduli^2 candidates
  double max_imag = 0.0;          // worst discarded imaginary part
  double sum = 0.0;               // sum of gamma (row k = 0 demands 1)
  bool real_valid = false;        // max_imag <= 1e-10
  bool nonnegative = false;       // all gamma >= -1e-12
  bool feasible = false;          // real_valid && nonnegative
};

// Solves E gamma = u by the Lagrange-coefficient (Bjorck-Pereyra style)
// structured elimination, O(N^2). A negative entry makes the instance
// infeasible (reported, not thrown); a numerically singular E throws a
// conditioning error.
ModuliSolution solve_moduli(const MomentSystem& sys);

struct ScalingSolveReport {
  bool feasible = false;
  std::string failure;  // empty when feasible; names the failed stage/check
  std::vector<cplx> eigenvalues;
  ModuliSolution moduli;
  std::vector<cplx> c;         // eigen-coordinates of the candidate
  std::vector<double> theta;   // phases found by the search
  StateVector phi;             // candidate scaling vector (when feasible)
  double fixed_point_residual = 0.0;  // ||c - lambda c||
  double higher_moment_residual = 0.0;  // diagnostic for k = N..2N-1
  double tsr_resid = 0.0;
  double orthonormality_dev = 0.0;
  double h_rederive_dev = 0.0;
  int attempts_used = 0;
  std::uint64_t seed = 0;
};

// The fixed-point search: gamma from the moment system pins |c_l|, the
// phases are found by multi-start local descent on ||c - lambda c||^2 with a
// Gauss-Newton polish, and every candidate is validated (two-scale residual,
// translate orthonormality on k = 1..N-1, filter re-derivation) before being
// returned. Validation failure downgrades the result to infeasibility.
ScalingSolveReport solve_scaling_vector(const UnitaryPair& pair,
                                        const std::vector<cplx>& h,
                                        std::int64_t h_offset,
                                        int attempts = 16,
                                        std::uint64_t seed = 1);

}  // namespace mrhilb
