#pragma once

#include <array>

#include <Eigen/Dense>

#include "mrhilb/mra_engine.hpp"

namespace mrhilb {

// ---------------------------------------------------------------------------
// Dyadic line (Haar) model
// ---------------------------------------------------------------------------

struct HaarModel {
  std::shared_ptr<const ModelSpace> space;
  UnitaryPair pair;
  StateVector phi;  // indicator of [0, 1)
};

// Piecewise-constant dyadic grid of spacing 2^-finest_level on
// [-half_extent, half_extent]; tau = unit shift, pi = dilation with sqrt(2)
// weight, both exact on the grid.
HaarModel make_haar_line_model(int finest_level = 12, double half_extent = 80.0);

// ---------------------------------------------------------------------------
// Warped interval model on (0, 1)
// ---------------------------------------------------------------------------

// The logistic warp u = v(x) carrying (0,1) onto the line.
struct WarpMap {
  static double v(double x);        // log(x / (1 - x))
  static double v_inv(double u);    // 1 / (1 + e^-u)
  static double v_prime(double x);  // 1 / (x (1 - x))
};

// Interval [v_inv(2^j k), v_inv(2^j (k+1))) in x-coordinates.
struct WarpCell {
  int j = 0;
  std::int64_t k = 0;
  double lo = 0.0;
  double hi = 0.0;
};

WarpCell warp_cell(int j, std::int64_t k);

struct WarpedModel {
  std::shared_ptr<const ModelSpace> space;
  UnitaryPair pair;
  StateVector rho;  // normalized indicator-image scaling vector
};

// Internally a uniform dyadic grid in u = v(x) coordinates, where the pair
// acts by exact shift/dilation; x-space evaluation goes through the warp.
WarpedModel make_warped_interval_model(int finest_level = 12,
                                       double cell_extent = 80.0);

// x-space view of a u-space grid vector: g(v(x)) sqrt(v'(x)).
// Throws domain_boundary outside the open interval (0, 1).
cplx evaluate_warped(const StateVector& g, double x);

// The printed x-coordinate forms of the warped pair, applied to an arbitrary
// sampled function F. These are views for cross-checking against the exact
// u-space route, not the hot path.
//   translation: sqrt(e)/(x(1-e)+e) * F(x / (x(1-e)+e))
//   dilation:    sqrt(2) sqrt(x(1-x))/(x^2+(1-x)^2) * F(x^2 / (x^2+(1-x)^2))
cplx warped_translation_formula(const std::function<cplx(double)>& F, double x);
cplx warped_dilation_formula(const std::function<cplx(double)>& F, double x);

// ---------------------------------------------------------------------------
// Sequence-space model over the Hermite-function basis
// ---------------------------------------------------------------------------

struct SequenceModel {
  std::shared_ptr<const ModelSpace> space;
  UnitaryPair pair;
  StateVector phi;  // the atom with j = 0, k = 0
};

// l^2 image of the dyadic-line picture: atoms b^(j,k) are the coefficient
// sequences of normalized dyadic indicators against the Hermite functions.
// Shadow-represented vectors transport exactly through the function picture;
// raw coefficient arrays transport through truncated shift/dilation matrices
// and raise lossy_transport when the discarded norm fraction exceeds the
// model's truncation tolerance.
SequenceModel make_sequence_model(int basis_truncation = 128,
                                  int finest_level = 12,
                                  double half_extent = 80.0);

// The atom b^(j,k) in exact shadow form.
StateVector sequence_atom(const SequenceModel& model, int j, std::int64_t k);

// Truncated Hermite coefficients of b^(j,k), computed directly by quadrature
// of the basis functions over [2^j k, 2^j (k+1)); independent of the shadow
// machinery, usable as an oracle.
std::vector<cplx> sequence_atom_coefficients(int basis_truncation, int j,
                                             std::int64_t k);

// Wraps a raw coefficient array as a model vector (SeqRep::raw).
StateVector raw_sequence_vector(const SequenceModel& model,
                                std::vector<cplx> coeffs);

// ---------------------------------------------------------------------------
// Finite-dimensional pairs
// ---------------------------------------------------------------------------

struct FiniteModel {
  std::shared_ptr<const ModelSpace> space;
  UnitaryPair pair;
  Eigen::MatrixXcd tau;
  Eigen::MatrixXcd pi;
};

// Generic finite-dimensional pair backed by explicit unitary matrices.
FiniteModel make_matrix_pair_model(const std::string& id,
                                   const Eigen::MatrixXcd& tau,
                                   const Eigen::MatrixXcd& pi);

// The 2-dim pair tau = exp(i (2pi/3) b.sigma), pi = i e^{i a0} a.sigma with
// orthonormal real 3-vectors a, b (Pauli algebra). Throws configuration on
// non-orthonormal axes.
FiniteModel make_finite_pair_model(const std::array<double, 3>& a_axis,
                                   const std::array<double, 3>& b_axis,
                                   double a0);

// ---------------------------------------------------------------------------
// Complex-filter counterexample system
// ---------------------------------------------------------------------------

// Filter window h = (-i/2, 1/2, i/2, 1/2) attached to the dyadic-line pair.
// The filter satisfies the coefficient-side orthonormality identity, yet the
// mother wavelet it generates fails <Psi, tau^-1 Phi> = 0; the system is
// marked formal and expands through the unit-indicator carrier.
ScalingSystem make_complex_counterexample_system();

// ---------------------------------------------------------------------------
// Reverse-engineered solver fixture
// ---------------------------------------------------------------------------

struct SolverFixture {
  FiniteModel model;
  std::vector<cplx> h;         // planted filter window, indices 0..3
  std::int64_t h_offset = 0;
  std::vector<cplx> planted_c; // eigen-coordinates of the planted solution
  std::vector<double> planted_theta;
};

// 4-dim instance built backwards from a known scaling vector: tau is the
// diagonal of fourth roots of unity, the filter and the (phase-twisted cyclic
// shift) pi are chosen so that c = lambda c holds exactly for the planted c.
SolverFixture make_solver_fixture4();

}  // namespace mrhilb
