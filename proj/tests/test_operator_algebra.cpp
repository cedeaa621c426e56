#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mrhilb/models.hpp"

using namespace mrhilb;

TEST_CASE("known actions of the dyadic-line pair") {
  const HaarModel m = make_haar_line_model();
  // translation: tau Phi = chi_[1,2)
  const StateVector t = m.pair.tau_apply(m.phi);
  CHECK(t.level == 0);
  CHECK(std::abs(t.at(1) - cplx{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(t.at(0)) < 1e-15);
  // dilation: pi Phi = sqrt(2) chi_[0,1/2)
  const StateVector p = m.pair.pi_apply(m.phi);
  CHECK(p.level == 1);
  CHECK(std::abs(p.at(0) - cplx{std::sqrt(2.0), 0.0}) < 1e-15);
  CHECK(std::abs(p.at(1)) < 1e-15);
}

TEST_CASE("unitarity certification passes on every shipped pair") {
  CHECK(verify_unitarity(make_haar_line_model().pair, 8, 7).pass);
  CHECK(verify_unitarity(make_warped_interval_model().pair, 8, 7).pass);
  CHECK(verify_unitarity(make_sequence_model(64).pair, 8, 7).pass);
  CHECK(verify_unitarity(
            make_finite_pair_model({1, 0, 0}, {0, 0, 1}, 0.0).pair, 8, 7)
            .pass);
}

TEST_CASE("iterated commutation law holds on random vectors") {
  for (const UnitaryPair& pair :
       {make_haar_line_model().pair, make_warped_interval_model().pair,
        make_sequence_model(64).pair}) {
    const CommutationReport rep = verify_commutation_law(pair, 3, 8, 8, 11);
    CHECK(rep.pass);
    CHECK(std::max(rep.max_residual_forward, rep.max_residual_inverse) <
          1e-12);
  }
}

TEST_CASE("finite-dimensional pairs get the exhaustive basis mode") {
  const FiniteModel m = make_finite_pair_model({1, 0, 0}, {0, 0, 1}, 0.3);
  const CommutationReport rep = verify_commutation_law(m.pair, 3, 8, 8, 11);
  CHECK(rep.pass);
  CHECK(rep.trials == 2);  // one probe per basis vector, not per seed
  CHECK(std::max(rep.max_residual_forward, rep.max_residual_inverse) < 1e-14);
}

TEST_CASE("words apply right to left") {
  const HaarModel m = make_haar_line_model();
  // pi tau^2 Phi: shift to [2,3) then dilate to sqrt(2) chi_[1,3/2)
  const OperatorWord w{{{Gen::pi, 1}, {Gen::tau, 2}}};
  const StateVector v = apply_word(m.pair, w, m.phi);
  CHECK(v.level == 1);
  CHECK(std::abs(v.at(2) - cplx{std::sqrt(2.0), 0.0}) < 1e-15);
  // inverse word undoes it
  const OperatorWord winv{{{Gen::tau, -2}, {Gen::pi, -1}}};
  const StateVector back = apply_word(m.pair, winv, v);
  const double resid =
      combine({{cplx{1.0, 0.0}, back}, {cplx{-1.0, 0.0}, m.phi}}).norm();
  CHECK(resid < 1e-15);
}

TEST_CASE("window overflow names the offending generator") {
  const HaarModel m = make_haar_line_model(6, 8.0);
  try {
    apply_word(m.pair, {{{Gen::tau, 100}}}, m.phi);
    FAIL("expected window overflow");
  } catch (const MraError& e) {
    CHECK(e.code() == errc::window_overflow);
    CHECK(std::string(e.what()).find("tau^100") != std::string::npos);
  }
}

TEST_CASE("Pauli pair satisfies its algebraic identities") {
  const double a0 = 0.4;
  const FiniteModel m = make_finite_pair_model({1, 0, 0}, {0, 0, 1}, a0);
  const Eigen::Matrix2cd tau = m.tau, pi = m.pi;
  const cplx i{0.0, 1.0};
  // direct 2x2 product oracle for the exchange relation
  CHECK((tau * pi - pi * tau * tau).norm() < 1e-14);
  CHECK((tau * tau * tau - Eigen::Matrix2cd::Identity()).norm() < 1e-14);
  CHECK((pi * pi + std::exp(2.0 * i * a0) * Eigen::Matrix2cd::Identity())
            .norm() < 1e-14);
}
