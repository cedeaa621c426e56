#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mrhilb/models.hpp"

using namespace mrhilb;

TEST_CASE("dyadic-line factory validates its window parameters") {
  CHECK_NOTHROW(make_haar_line_model(1, 4.0));
  try {
    make_haar_line_model(0, 80.0);
    FAIL("expected configuration error for level < 1");
  } catch (const MraError& e) {
    CHECK(e.code() == errc::configuration);
  }
  try {
    make_haar_line_model(12, 2.0);
    FAIL("expected configuration error for extent < 4");
  } catch (const MraError& e) {
    CHECK(e.code() == errc::configuration);
  }
}

TEST_CASE("logistic warp identities") {
  CHECK(WarpMap::v_inv(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(WarpMap::v(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  for (double u : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
    const double x = WarpMap::v_inv(u);
    CHECK(WarpMap::v(x) == doctest::Approx(u).epsilon(1e-12));
    CHECK(WarpMap::v_prime(x) ==
          doctest::Approx(1.0 / (x * (1.0 - x))).epsilon(1e-12));
  }
}

TEST_CASE("warped cells tile the interval without gaps") {
  for (int j : {-1, 0, 1}) {
    for (std::int64_t k = -3; k < 3; ++k) {
      const WarpCell a = warp_cell(j, k);
      const WarpCell b = warp_cell(j, k + 1);
      CHECK(a.lo < a.hi);
      CHECK(a.hi == doctest::Approx(b.lo).epsilon(1e-15));
      CHECK(a.lo > 0.0);
      CHECK(b.hi < 1.0);
    }
  }
  // the unit cell in internal coordinates maps to [1/2, e/(1+e))
  const WarpCell c = warp_cell(0, 0);
  CHECK(c.lo == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.hi ==
        doctest::Approx(std::exp(1.0) / (1.0 + std::exp(1.0))).epsilon(1e-14));
}

TEST_CASE("warped scaling vector is the weighted indicator image") {
  const WarpedModel m = make_warped_interval_model();
  CHECK(m.rho.norm() == doctest::Approx(1.0).epsilon(1e-14));
  const WarpCell cell = warp_cell(0, 0);
  for (double t : {0.1, 0.5, 0.9}) {
    const double x = cell.lo + t * (cell.hi - cell.lo);
    CHECK(std::abs(evaluate_warped(m.rho, x) -
                   cplx{std::sqrt(WarpMap::v_prime(x)), 0.0}) < 1e-12);
  }
  // just outside the cell the vector vanishes
  CHECK(std::abs(evaluate_warped(m.rho, cell.lo - 1e-6)) < 1e-14);
}

TEST_CASE("closed form of the dilated and shifted warped vectors") {
  const WarpedModel m = make_warped_interval_model();
  // pi^-l tau^k rho is 2^(-l/2) sqrt(v'(x)) on the (l, k) warped cell
  for (int l : {0, 1, 2}) {
    for (std::int64_t k = -2; k <= 2; ++k) {
      const StateVector vec = m.pair.pi(m.pair.tau(m.rho, k), -l);
      const WarpCell cell = warp_cell(l, k);
      const double height = std::pow(2.0, -0.5 * l);
      for (int i = 1; i <= 10; ++i) {
        const double x = cell.lo + (cell.hi - cell.lo) * i / 11.0;
        CHECK(std::abs(evaluate_warped(vec, x) -
                       cplx{height * std::sqrt(WarpMap::v_prime(x)), 0.0}) <
              1e-12);
      }
    }
  }
}

TEST_CASE("warped pair agrees with its x-coordinate conjugation formulas") {
  const WarpedModel m = make_warped_interval_model();
  const StateVector g = combine({{cplx{0.7, -0.2}, m.rho},
                                 {cplx{0.3, 0.5}, m.pair.tau(m.rho, 1)}});
  const auto F = [&](double x) { return evaluate_warped(g, x); };
  const StateVector tg = m.pair.tau_apply(g);
  const StateVector pg = m.pair.pi_apply(g);
  for (double x : {0.52, 0.6, 0.71, 0.8, 0.9}) {
    CHECK(std::abs(warped_translation_formula(F, x) - evaluate_warped(tg, x)) <
          1e-11);
    CHECK(std::abs(warped_dilation_formula(F, x) - evaluate_warped(pg, x)) <
          1e-11);
  }
}

TEST_CASE("warped evaluation rejects the interval endpoints") {
  const WarpedModel m = make_warped_interval_model();
  for (double x : {0.0, 1.0, -0.5, 1.5}) {
    try {
      evaluate_warped(m.rho, x);
      FAIL("expected domain_boundary");
    } catch (const MraError& e) {
      CHECK(e.code() == errc::domain_boundary);
    }
  }
}

TEST_CASE("sequence atoms are orthonormal and satisfy the two-scale split") {
  const SequenceModel m = make_sequence_model(64);
  const StateVector b00 = sequence_atom(m, 0, 0);
  const StateVector b01 = sequence_atom(m, 0, 1);
  CHECK(std::abs(inner_product(b00, b00) - cplx{1.0, 0.0}) < 1e-14);
  CHECK(std::abs(inner_product(b00, b01)) < 1e-14);
  // b(0,0) = (b(-1,0) + b(-1,1)) / sqrt(2)
  const cplx half{1.0 / std::sqrt(2.0), 0.0};
  const StateVector split = combine({{half, sequence_atom(m, -1, 0)},
                                     {half, sequence_atom(m, -1, 1)}});
  const double resid =
      combine({{cplx{1.0, 0.0}, b00}, {cplx{-1.0, 0.0}, split}}).norm();
  CHECK(resid < 1e-14);
  // the dilation takes b(0,0) to b(-1,0)
  const StateVector pb = m.pair.pi_apply(b00);
  const double dresid =
      combine({{cplx{1.0, 0.0}, pb},
               {cplx{-1.0, 0.0}, sequence_atom(m, -1, 0)}}).norm();
  CHECK(dresid < 1e-14);
}

TEST_CASE("materialized atom coefficients match the direct quadrature oracle") {
  const SequenceModel m = make_sequence_model(48);
  const std::vector<cplx> via_model = m.space->materialize(sequence_atom(m, 0, 0));
  const std::vector<cplx> oracle = sequence_atom_coefficients(48, 0, 0);
  REQUIRE(via_model.size() == oracle.size());
  for (std::size_t i = 0; i < oracle.size(); ++i)
    CHECK(std::abs(via_model[i] - oracle[i]) < 1e-8);
}

TEST_CASE("raw transport matrices reproduce closed-form entries") {
  const SequenceModel m = make_sequence_model(96);
  std::vector<cplx> e0(static_cast<std::size_t>(m.space->dim), cplx{0.0, 0.0});
  e0[0] = cplx{1.0, 0.0};
  const StateVector raw = raw_sequence_vector(m, e0);
  // shift entry (0,0): integral of the two unit Gaussian bumps = e^{-1/4}
  const StateVector shifted = m.pair.tau_apply(raw);
  CHECK(std::abs(shifted.coeffs[0] - cplx{std::exp(-0.25), 0.0}) < 1e-10);
  // dilation entry (0,0): sqrt(2) overlap of the squeezed bump = 2/sqrt(5)
  const StateVector dilated = m.pair.pi_apply(raw);
  CHECK(std::abs(dilated.coeffs[0] - cplx{2.0 / std::sqrt(5.0), 0.0}) < 1e-10);
}

TEST_CASE("raw transport at the truncation edge is rejected as lossy") {
  const SequenceModel m = make_sequence_model(32);
  std::vector<cplx> top(static_cast<std::size_t>(m.space->dim), cplx{0.0, 0.0});
  top.back() = cplx{1.0, 0.0};
  const StateVector raw = raw_sequence_vector(m, top);
  try {
    m.pair.tau_apply(raw);
    FAIL("expected lossy_transport");
  } catch (const MraError& e) {
    CHECK(e.code() == errc::lossy_transport);
  }
}

TEST_CASE("atom truncation error shrinks as the basis grows") {
  double prev = 0.0;
  for (int trunc : {32, 64, 128}) {
    const SequenceModel m = make_sequence_model(trunc);
    const StateVector raw =
        raw_sequence_vector(m, m.space->materialize(sequence_atom(m, 0, 0)));
    const double mass = std::abs(inner_product(raw, raw));
    CHECK(mass <= 1.0 + 1e-12);
    CHECK(mass >= prev - 1e-12);
    prev = mass;
  }
  CHECK(prev > 0.95);
}

TEST_CASE("two-dim pair factory demands orthonormal axes") {
  CHECK_NOTHROW(make_finite_pair_model({1, 0, 0}, {0, 0, 1}, 0.0));
  for (const auto& axes :
       {std::pair<std::array<double, 3>, std::array<double, 3>>{{1, 0, 0},
                                                                {1, 0, 0}},
        {{2, 0, 0}, {0, 0, 1}},
        {{1, 0, 0}, {0, 0.5, 0.5}}}) {
    try {
      make_finite_pair_model(axes.first, axes.second, 0.0);
      FAIL("expected configuration error");
    } catch (const MraError& e) {
      CHECK(e.code() == errc::configuration);
    }
  }
}

TEST_CASE("complex counterexample window carries the printed values") {
  const ScalingSystem sys = make_complex_counterexample_system();
  const cplx i{0.0, 1.0};
  CHECK(sys.h_lo() == 0);
  CHECK(sys.h_hi() == 3);
  CHECK(std::abs(sys.h_at(0) - (-i * 0.5)) < 1e-15);
  CHECK(std::abs(sys.h_at(1) - cplx{0.5, 0.0}) < 1e-15);
  CHECK(std::abs(sys.h_at(2) - i * 0.5) < 1e-15);
  CHECK(std::abs(sys.h_at(3) - cplx{0.5, 0.0}) < 1e-15);
  CHECK(sys.formal);
  CHECK(sys.expansion_carrier.has_value());
  // the formal scaling vector is the h-combination of carrier translates
  CHECK(sys.phi.norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("planted four-dim solver fixture is internally consistent") {
  const SolverFixture fx = make_solver_fixture4();
  // tau is the diagonal of fourth roots of unity
  const cplx i{0.0, 1.0};
  for (int l = 0; l < 4; ++l)
    CHECK(std::abs(fx.model.tau(l, l) - std::pow(i, l)) < 1e-15);
  // both generators are unitary
  CHECK((fx.model.tau.adjoint() * fx.model.tau -
         Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-14);
  CHECK((fx.model.pi.adjoint() * fx.model.pi -
         Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-14);
  // the planted eigen-coordinates have the equal-moduli profile
  REQUIRE(fx.planted_c.size() == 4);
  for (const cplx& c : fx.planted_c) CHECK(std::abs(c) == doctest::Approx(0.5));
  // the filter window normalizes
  double mass = 0.0;
  for (const cplx& c : fx.h) mass += std::norm(c);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}
