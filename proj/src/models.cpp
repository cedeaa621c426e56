#include "mrhilb/models.hpp"

#include <cmath>
#include <mutex>
#include <random>

#include "mrhilb/hermite.hpp"
#include "mrhilb/quadrature.hpp"

namespace mrhilb {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void check_extent(const StateVector& v) {
  const double w = std::pow(2.0, -v.level);
  const double lo = static_cast<double>(v.offset) * w;
  const double hi = static_cast<double>(v.end()) * w;
  const double R = v.space->extent;
  if (lo < -R - 1e-9 || hi > R + 1e-9)
    throw MraError(errc::window_overflow,
                   "support [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + ") escapes extent +-" +
                       std::to_string(R));
}

StateVector grid_shift(const StateVector& v, int direction) {
  // Unit shifts are only grid-aligned at level >= 0.
  StateVector out = v.level < 0 ? refined_to_level(v, 0) : v;
  out.offset += static_cast<std::int64_t>(direction) *
                (std::int64_t{1} << out.level);
  check_extent(out);
  return out;
}

StateVector grid_dilate(const StateVector& v) {
  if (v.level + 1 > v.space->max_level)
    throw MraError(errc::window_overflow,
                   "dilation exceeds model resolution level " +
                       std::to_string(v.space->max_level));
  StateVector out = v;
  ++out.level;
  for (cplx& c : out.coeffs) c *= kSqrt2;
  return out;
}

StateVector grid_contract(const StateVector& v) {
  StateVector out = v;
  --out.level;
  for (cplx& c : out.coeffs) c /= kSqrt2;
  check_extent(out);
  return out;
}

StateVector grid_random(const std::shared_ptr<const ModelSpace>& space,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL);
  std::normal_distribution<double> gauss;
  StateVector v;
  v.space = space;
  v.level = std::min(2, space->max_level);
  const std::int64_t cells_per_unit = std::int64_t{1} << v.level;
  v.offset = -2 * cells_per_unit;  // support [-2, 2)
  v.coeffs.resize(static_cast<std::size_t>(4 * cells_per_unit));
  for (cplx& c : v.coeffs) c = cplx{gauss(rng), gauss(rng)};
  const double n = v.norm();
  for (cplx& c : v.coeffs) c /= n;
  return v;
}

UnitaryPair grid_pair(const std::shared_ptr<const ModelSpace>& space,
                      const std::string& label) {
  UnitaryPair p;
  p.model = space;
  p.label = label;
  p.tau_apply = [](const StateVector& v) { return grid_shift(v, +1); };
  p.tau_inverse = [](const StateVector& v) { return grid_shift(v, -1); };
  p.pi_apply = [](const StateVector& v) { return grid_dilate(v); };
  p.pi_inverse = [](const StateVector& v) { return grid_contract(v); };
  p.random_vector = [space](std::uint64_t seed) {
    return grid_random(space, seed);
  };
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Dyadic line
// ---------------------------------------------------------------------------

HaarModel make_haar_line_model(int finest_level, double half_extent) {
  if (finest_level < 1)
    throw MraError(errc::configuration, "finest level must be >= 1");
  if (half_extent < 4.0)
    throw MraError(errc::configuration,
                   "half-extent below 4 cannot hold one two-scale expansion");
  ModelSpace ms;
  ms.kind = SpaceKind::dyadic_line;
  ms.id = "dyadic-line/L" + std::to_string(finest_level);
  ms.max_level = finest_level;
  ms.extent = half_extent;
  ms.tolerance = kExactTol;
  ms.trunc_tolerance = kExactTol;
  HaarModel m;
  m.space = std::make_shared<const ModelSpace>(std::move(ms));
  m.pair = grid_pair(m.space, "dyadic-line");
  m.phi.space = m.space;
  m.phi.level = 0;
  m.phi.offset = 0;
  m.phi.coeffs = {cplx{1.0, 0.0}};
  return m;
}

// ---------------------------------------------------------------------------
// Warped interval
// ---------------------------------------------------------------------------

double WarpMap::v(double x) { return std::log(x / (1.0 - x)); }
double WarpMap::v_inv(double u) { return 1.0 / (1.0 + std::exp(-u)); }
double WarpMap::v_prime(double x) { return 1.0 / (x * (1.0 - x)); }

WarpCell warp_cell(int j, std::int64_t k) {
  WarpCell c;
  c.j = j;
  c.k = k;
  c.lo = WarpMap::v_inv(std::ldexp(static_cast<double>(k), j));
  c.hi = WarpMap::v_inv(std::ldexp(static_cast<double>(k + 1), j));
  return c;
}

WarpedModel make_warped_interval_model(int finest_level, double cell_extent) {
  if (finest_level < 1)
    throw MraError(errc::configuration, "finest level must be >= 1");
  if (cell_extent < 4.0)
    throw MraError(errc::configuration,
                   "cell extent below 4 cannot hold one two-scale expansion");
  ModelSpace ms;
  ms.kind = SpaceKind::warped_interval;
  ms.id = "warped-interval/L" + std::to_string(finest_level);
  ms.max_level = finest_level;
  ms.extent = cell_extent;
  ms.tolerance = kQuadTol;       // x-space views are quadrature-backed
  ms.trunc_tolerance = kQuadTol;
  WarpedModel m;
  m.space = std::make_shared<const ModelSpace>(std::move(ms));
  m.pair = grid_pair(m.space, "warped-interval");
  m.rho.space = m.space;
  m.rho.level = 0;
  m.rho.offset = 0;
  m.rho.coeffs = {cplx{1.0, 0.0}};
  return m;
}

cplx evaluate_warped(const StateVector& g, double x) {
  if (!(x > 0.0 && x < 1.0))
    throw MraError(errc::domain_boundary,
                   "warped evaluation needs x strictly inside (0, 1)");
  const double u = WarpMap::v(x);
  const double scale = std::pow(2.0, g.level);
  const std::int64_t cell =
      static_cast<std::int64_t>(std::floor(u * scale));
  return g.at(cell) * std::sqrt(WarpMap::v_prime(x));
}

cplx warped_translation_formula(const std::function<cplx(double)>& F,
                                double x) {
  if (!(x > 0.0 && x < 1.0))
    throw MraError(errc::domain_boundary,
                   "warped evaluation needs x strictly inside (0, 1)");
  const double e = std::exp(1.0);
  const double denom = x * (1.0 - e) + e;
  return std::sqrt(e) / denom * F(x / denom);
}

cplx warped_dilation_formula(const std::function<cplx(double)>& F, double x) {
  if (!(x > 0.0 && x < 1.0))
    throw MraError(errc::domain_boundary,
                   "warped evaluation needs x strictly inside (0, 1)");
  const double denom = x * x + (1.0 - x) * (1.0 - x);
  return kSqrt2 * std::sqrt(x * (1.0 - x)) / denom * F(x * x / denom);
}

// ---------------------------------------------------------------------------
// Sequence space
// ---------------------------------------------------------------------------

namespace {

// Truncated coefficient transport for raw sequence vectors: matrices of the
// unit shift and the weighted dilation against the Hermite basis, computed
// once on demand and shared by the pair's closures.
struct SeqTables {
  std::mutex mu;
  bool ready = false;
  Eigen::MatrixXd shift;   // shift(k, l)  = int psi_k(x) psi_l(x - 1) dx
  Eigen::MatrixXd dilate;  // dilate(k, l) = sqrt(2) int psi_k(x) psi_l(2x) dx
};

void ensure_tables(SeqTables& tables, int lmax) {
  std::lock_guard<std::mutex> lock(tables.mu);
  if (tables.ready) return;
  const int dim = lmax + 1;
  tables.shift.setZero(dim, dim);
  tables.dilate.setZero(dim, dim);
  // Effective support of the highest mode plus room for the unit shift.
  const double reach = std::sqrt(2.0 * lmax + 1.0) + 4.0;
  const double panel = std::min(0.25, 2.0 / std::sqrt(2.0 * lmax + 1.0));
  integrate_nodes(-reach, reach + 1.0, [&](double x, double w) {
    const std::vector<double> here = hermite_functions(lmax, x);
    const std::vector<double> back = hermite_functions(lmax, x - 1.0);
    const std::vector<double> twice = hermite_functions(lmax, 2.0 * x);
    Eigen::Map<const Eigen::VectorXd> h(here.data(), dim);
    Eigen::Map<const Eigen::VectorXd> b(back.data(), dim);
    Eigen::Map<const Eigen::VectorXd> t(twice.data(), dim);
    tables.shift.noalias() += w * h * b.transpose();
    tables.dilate.noalias() += (kSqrt2 * w) * h * t.transpose();
  }, panel, 12);
  tables.ready = true;
}

StateVector raw_transport(const StateVector& v, const Eigen::MatrixXd& M,
                          bool adjoint) {
  Eigen::VectorXcd c(static_cast<Eigen::Index>(v.coeffs.size()));
  for (Eigen::Index i = 0; i < c.size(); ++i)
    c(i) = v.coeffs[static_cast<std::size_t>(i)];
  const Eigen::VectorXcd out = adjoint ? (M.transpose() * c).eval()
                                       : (M * c).eval();
  const double before = c.norm();
  const double after = out.norm();
  const double lost2 = std::max(0.0, before * before - after * after);
  const double fraction = before > 0.0 ? std::sqrt(lost2) / before : 0.0;
  if (fraction > v.space->trunc_tolerance)
    throw MraError(errc::lossy_transport,
                   "transport discards norm fraction " +
                       std::to_string(fraction) +
                       " beyond the truncation tolerance");
  StateVector res = v;
  res.coeffs.assign(out.data(), out.data() + out.size());
  return res;
}

}  // namespace

SequenceModel make_sequence_model(int basis_truncation, int finest_level,
                                  double half_extent) {
  if (basis_truncation < 8)
    throw MraError(errc::configuration, "basis truncation must be >= 8");
  if (finest_level < 1)
    throw MraError(errc::configuration, "finest level must be >= 1");
  const int lmax = basis_truncation;
  ModelSpace ms;
  ms.kind = SpaceKind::sequence_space;
  ms.id = "hermite-sequence/L" + std::to_string(lmax);
  ms.max_level = finest_level;
  ms.extent = half_extent;
  ms.dim = lmax + 1;
  ms.tolerance = kQuadTol;
  ms.trunc_tolerance = 1e-6;  // raw-transport loss threshold
  ms.materialize = [lmax](const StateVector& v) {
    if (v.rep == SeqRep::raw) return v.coeffs;
    std::vector<cplx> out(static_cast<std::size_t>(lmax) + 1, cplx{0.0, 0.0});
    const double w = std::pow(2.0, -v.level);
    for (std::int64_t i = v.offset; i < v.end(); ++i) {
      const cplx val = v.at(i);
      if (std::abs(val) == 0.0) continue;
      const std::vector<double> cell = hermite_cell_integrals(
          lmax, static_cast<double>(i) * w, static_cast<double>(i + 1) * w);
      for (std::size_t l = 0; l < out.size(); ++l) out[l] += val * cell[l];
    }
    return out;
  };
  SequenceModel m;
  m.space = std::make_shared<const ModelSpace>(std::move(ms));

  auto tables = std::make_shared<SeqTables>();
  UnitaryPair shadow = grid_pair(m.space, "hermite-sequence");
  auto route = [tables, lmax](const StateVector& v,
                              const std::function<StateVector(
                                  const StateVector&)>& shadow_op,
                              bool dilation, bool adjoint) {
    if (v.rep == SeqRep::shadow) return shadow_op(v);
    ensure_tables(*tables, lmax);
    return raw_transport(v, dilation ? tables->dilate : tables->shift,
                         adjoint);
  };
  m.pair = shadow;
  m.pair.tau_apply = [route, shadow](const StateVector& v) {
    return route(v, shadow.tau_apply, false, false);
  };
  m.pair.tau_inverse = [route, shadow](const StateVector& v) {
    return route(v, shadow.tau_inverse, false, true);
  };
  m.pair.pi_apply = [route, shadow](const StateVector& v) {
    return route(v, shadow.pi_apply, true, false);
  };
  m.pair.pi_inverse = [route, shadow](const StateVector& v) {
    return route(v, shadow.pi_inverse, true, true);
  };

  m.phi = sequence_atom(m, 0, 0);
  return m;
}

StateVector sequence_atom(const SequenceModel& model, int j, std::int64_t k) {
  if (-j > model.space->max_level)
    throw MraError(errc::window_overflow,
                   "atom level " + std::to_string(j) +
                       " exceeds model resolution");
  StateVector v;
  v.space = model.space;
  v.level = -j;
  v.offset = k;
  v.coeffs = {cplx{std::pow(2.0, -0.5 * j), 0.0}};
  check_extent(v);
  return v;
}

std::vector<cplx> sequence_atom_coefficients(int basis_truncation, int j,
                                             std::int64_t k) {
  const double a = std::ldexp(static_cast<double>(k), j);
  const double b = std::ldexp(static_cast<double>(k + 1), j);
  const std::vector<double> cell =
      hermite_cell_integrals(basis_truncation, a, b);
  const double scale = std::pow(2.0, -0.5 * j);
  std::vector<cplx> out(cell.size());
  for (std::size_t l = 0; l < cell.size(); ++l)
    out[l] = cplx{scale * cell[l], 0.0};
  return out;
}

StateVector raw_sequence_vector(const SequenceModel& model,
                                std::vector<cplx> coeffs) {
  if (static_cast<int>(coeffs.size()) != model.space->dim)
    throw MraError(errc::configuration,
                   "raw coefficient array must have the model dimension " +
                       std::to_string(model.space->dim));
  StateVector v;
  v.space = model.space;
  v.rep = SeqRep::raw;
  v.coeffs = std::move(coeffs);
  return v;
}

// ---------------------------------------------------------------------------
// Finite-dimensional pairs
// ---------------------------------------------------------------------------

namespace {

// M^n by repeated squaring (n may be negative: adjoint of the inverse power
// since M is unitary). Keeps the error logarithmic in |n|.
Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& M, std::int64_t n) {
  const Eigen::Index dim = M.rows();
  Eigen::MatrixXcd base = M;
  if (n < 0) base = M.adjoint();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(dim, dim);
  for (std::uint64_t e = static_cast<std::uint64_t>(std::llabs(n)); e > 0;
       e >>= 1) {
    if (e & 1) acc = acc * base;
    if (e > 1) base = base * base;
  }
  return acc;
}

StateVector matrix_apply(const Eigen::MatrixXcd& M, const StateVector& v);

// Smallest m in [1, limit] with M^m = I to high accuracy, or 0 if none.
// Finite-order generators let powers reduce their exponent mod m, which keeps
// iterated-commutation checks exact instead of accumulating rounding with |n|.
std::int64_t finite_order(const Eigen::MatrixXcd& M, std::int64_t limit) {
  const Eigen::Index dim = M.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd acc = M;
  for (std::int64_t m = 1; m <= limit; ++m) {
    if ((acc - id).norm() < 1e-12) return m;
    acc = acc * M;
  }
  return 0;
}

// Power closure for a unitary generator: exponents reduce mod the generator's
// order when it is finite (then at most order-1 products are needed), and fall
// back to squaring otherwise.
std::function<StateVector(const StateVector&, std::int64_t)> power_closure(
    const Eigen::MatrixXcd& M) {
  const std::int64_t order = finite_order(M, 256);
  return [M, order](const StateVector& v, std::int64_t n) {
    std::int64_t e = n;
    if (order > 0) {
      e %= order;
      if (e < 0) e += order;
      if (2 * e > order) e -= order;  // prefer the shorter direction
    }
    return matrix_apply(matrix_power(M, e), v);
  };
}

StateVector matrix_apply(const Eigen::MatrixXcd& M, const StateVector& v) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(M.cols());
  for (std::size_t i = 0; i < v.coeffs.size() &&
                          i < static_cast<std::size_t>(M.cols()); ++i)
    c(static_cast<Eigen::Index>(i)) = v.coeffs[i];
  const Eigen::VectorXcd out = M * c;
  StateVector res = v;
  res.coeffs.assign(out.data(), out.data() + out.size());
  return res;
}

}  // namespace

FiniteModel make_matrix_pair_model(const std::string& id,
                                   const Eigen::MatrixXcd& tau,
                                   const Eigen::MatrixXcd& pi) {
  const Eigen::Index n = tau.rows();
  if (tau.cols() != n || pi.rows() != n || pi.cols() != n)
    throw MraError(errc::configuration,
                   "pair matrices must be square and of equal dimension");
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
  if ((tau.adjoint() * tau - eye).norm() > 1e-12 ||
      (pi.adjoint() * pi - eye).norm() > 1e-12)
    throw MraError(errc::configuration, "pair matrices must be unitary");
  ModelSpace ms;
  ms.kind = SpaceKind::finite_dim;
  ms.id = id;
  ms.dim = static_cast<int>(n);
  ms.tolerance = kExactTol;
  ms.trunc_tolerance = kExactTol;
  FiniteModel m;
  m.tau = tau;
  m.pi = pi;
  m.space = std::make_shared<const ModelSpace>(std::move(ms));
  m.pair.model = m.space;
  m.pair.label = id;
  const Eigen::MatrixXcd tau_h = tau.adjoint();
  const Eigen::MatrixXcd pi_h = pi.adjoint();
  m.pair.tau_apply = [tau](const StateVector& v) {
    return matrix_apply(tau, v);
  };
  m.pair.tau_inverse = [tau_h](const StateVector& v) {
    return matrix_apply(tau_h, v);
  };
  m.pair.pi_apply = [pi](const StateVector& v) { return matrix_apply(pi, v); };
  m.pair.pi_inverse = [pi_h](const StateVector& v) {
    return matrix_apply(pi_h, v);
  };
  m.pair.tau_power = power_closure(tau);
  m.pair.pi_power = power_closure(pi);
  auto space = m.space;
  m.pair.random_vector = [space, n](std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL);
    std::normal_distribution<double> gauss;
    StateVector v;
    v.space = space;
    v.coeffs.resize(static_cast<std::size_t>(n));
    for (cplx& c : v.coeffs) c = cplx{gauss(rng), gauss(rng)};
    const double norm = v.norm();
    for (cplx& c : v.coeffs) c /= norm;
    return v;
  };
  return m;
}

FiniteModel make_finite_pair_model(const std::array<double, 3>& a_axis,
                                   const std::array<double, 3>& b_axis,
                                   double a0) {
  auto dot = [](const std::array<double, 3>& p, const std::array<double, 3>& q) {
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
  };
  if (std::abs(dot(a_axis, a_axis) - 1.0) > 1e-12 ||
      std::abs(dot(b_axis, b_axis) - 1.0) > 1e-12 ||
      std::abs(dot(a_axis, b_axis)) > 1e-12)
    throw MraError(errc::configuration,
                   "axes must be orthonormal real 3-vectors");
  const cplx i{0.0, 1.0};
  auto pauli_dot = [&i](const std::array<double, 3>& nvec) {
    Eigen::Matrix2cd s;
    s << nvec[2], cplx{nvec[0], -nvec[1]}, cplx{nvec[0], nvec[1]}, -nvec[2];
    return s;
  };
  const double theta = 2.0 * M_PI / 3.0;
  const Eigen::Matrix2cd tau = std::cos(theta) * Eigen::Matrix2cd::Identity() +
                               i * std::sin(theta) * pauli_dot(b_axis);
  const Eigen::Matrix2cd pi = i * std::exp(i * a0) * pauli_dot(a_axis);
  return make_matrix_pair_model("pauli-pair", tau, pi);
}

// ---------------------------------------------------------------------------
// Complex-filter counterexample
// ---------------------------------------------------------------------------

ScalingSystem make_complex_counterexample_system() {
  const HaarModel haar = make_haar_line_model();
  ScalingSystem sys;
  sys.pair = haar.pair;
  sys.h = {cplx{0.0, -0.5}, cplx{0.5, 0.0}, cplx{0.0, 0.5}, cplx{0.5, 0.0}};
  sys.h_offset = 0;
  sys.h_real = false;
  sys.formal = true;
  sys.expansion_carrier = haar.phi;
  std::vector<std::pair<cplx, StateVector>> terms;
  for (std::int64_t n = 0; n <= 3; ++n)
    terms.emplace_back(sys.h_at(n),
                       haar.pair.pi_apply(haar.pair.tau(haar.phi, n)));
  sys.phi = combine(terms);
  return sys;
}

// ---------------------------------------------------------------------------
// Reverse-engineered solver fixture
// ---------------------------------------------------------------------------

SolverFixture make_solver_fixture4() {
  const cplx i{0.0, 1.0};
  const int n = 4;
  std::vector<cplx> t(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) t[static_cast<std::size_t>(l)] = std::pow(i, l);

  SolverFixture fx;
  fx.planted_theta = {0.3, 1.1, -0.7, 2.0};
  fx.planted_c.resize(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l)
    fx.planted_c[static_cast<std::size_t>(l)] =
        0.5 * std::exp(i * fx.planted_theta[static_cast<std::size_t>(l)]);

  // Unimodular eigen-symbols q_l = sum_n h_n t_l^n; with t the fourth roots
  // of unity the symbol map is the order-4 discrete Fourier matrix, whose
  // inverse is its scaled adjoint, so h comes back in closed form.
  const std::array<double, 4> q_phase = {0.5, -1.2, 0.9, 2.4};
  std::vector<cplx> q(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l)
    q[static_cast<std::size_t>(l)] = std::exp(i * q_phase[static_cast<std::size_t>(l)]);
  fx.h.assign(static_cast<std::size_t>(n), cplx{0.0, 0.0});
  fx.h_offset = 0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      fx.h[static_cast<std::size_t>(k)] +=
          0.25 * std::conj(std::pow(t[static_cast<std::size_t>(l)], k)) *
          q[static_cast<std::size_t>(l)];

  Eigen::MatrixXcd tau = Eigen::MatrixXcd::Zero(n, n);
  for (int l = 0; l < n; ++l) tau(l, l) = t[static_cast<std::size_t>(l)];

  // pi sends the l-th eigenvector to the next one with the phase that locks
  // the planted c as a fixed point of the two-scale map.
  Eigen::MatrixXcd pi = Eigen::MatrixXcd::Zero(n, n);
  for (int l = 0; l < n; ++l) {
    const int next = (l + 1) % n;
    const cplx phase = fx.planted_c[static_cast<std::size_t>(next)] /
                       (fx.planted_c[static_cast<std::size_t>(l)] *
                        q[static_cast<std::size_t>(l)]);
    pi(next, l) = phase;
  }

  fx.model = make_matrix_pair_model("fixture-4", tau, pi);
  return fx;
}

}  // namespace mrhilb
