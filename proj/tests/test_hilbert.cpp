#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mrhilb/models.hpp"
#include "mrhilb/quadrature.hpp"

using namespace mrhilb;

namespace {

StateVector indicator(const HaarModel& m, int level, std::int64_t offset,
                      std::vector<cplx> cells) {
  StateVector v;
  v.space = m.space;
  v.level = level;
  v.offset = offset;
  v.coeffs = std::move(cells);
  return v;
}

}  // namespace

TEST_CASE("grid norms weight by cell width") {
  const HaarModel m = make_haar_line_model();
  CHECK(m.phi.norm() == doctest::Approx(1.0).epsilon(1e-14));
  // indicator of [0, 2): two unit cells, norm sqrt(2)
  const StateVector wide = indicator(m, 0, 0, {{1.0, 0.0}, {1.0, 0.0}});
  CHECK(wide.norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  // the same function written on the finer grid has the same norm
  const StateVector fine = refined_to_level(wide, 3);
  CHECK(fine.norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(fine.level == 3);
  CHECK(fine.coeffs.size() == 16);
}

TEST_CASE("inner product is conjugate-linear in the second argument") {
  const HaarModel m = make_haar_line_model();
  const StateVector u = indicator(m, 1, 0, {{1.0, 2.0}, {0.5, -1.0}});
  const StateVector v = indicator(m, 1, 0, {{-0.25, 1.0}, {2.0, 0.0}});
  const cplx i{0.0, 1.0};
  CHECK(std::abs(inner_product(u, scaled(v, i)) + i * inner_product(u, v)) <
        1e-14);
  CHECK(std::abs(inner_product(scaled(u, i), v) - i * inner_product(u, v)) <
        1e-14);
  // hermitian symmetry
  CHECK(std::abs(inner_product(u, v) - std::conj(inner_product(v, u))) <
        1e-14);
  // consistency with the norm
  CHECK(std::abs(inner_product(u, u) - cplx{u.norm() * u.norm(), 0.0}) <
        1e-13);
}

TEST_CASE("inner product aligns mixed levels exactly") {
  const HaarModel m = make_haar_line_model();
  const StateVector coarse = indicator(m, 0, 0, {{1.0, 0.0}});
  const StateVector fine = refined_to_level(coarse, 4);
  CHECK(std::abs(inner_product(coarse, fine) - cplx{1.0, 0.0}) < 1e-14);
  // half-overlap: <chi_[0,1), chi_[1/2,3/2)> = 1/2
  const StateVector shifted = indicator(m, 1, 1, {{1.0, 0.0}, {1.0, 0.0}});
  CHECK(std::abs(inner_product(coarse, shifted) - cplx{0.5, 0.0}) < 1e-14);
}

TEST_CASE("combine forms exact linear combinations") {
  const HaarModel m = make_haar_line_model();
  const StateVector a = indicator(m, 0, 0, {{1.0, 0.0}});
  const StateVector b = indicator(m, 1, 1, {{1.0, 0.0}});
  const StateVector s = combine({{cplx{2.0, 0.0}, a}, {cplx{-1.0, 0.0}, b}});
  // 2 chi_[0,1) - chi_[1/2,1): values 2 on [0,1/2), 1 on [1/2,1)
  CHECK(s.level == 1);
  CHECK(std::abs(s.at(0) - cplx{2.0, 0.0}) < 1e-14);
  CHECK(std::abs(s.at(1) - cplx{1.0, 0.0}) < 1e-14);
  CHECK_THROWS_AS(combine({}), MraError);
  const HaarModel other = make_haar_line_model(10, 40.0);
  CHECK_THROWS_AS(
      combine({{cplx{1.0, 0.0}, a}, {cplx{1.0, 0.0}, other.phi}}), MraError);
}

TEST_CASE("combine rejects results escaping the window") {
  const HaarModel m = make_haar_line_model(6, 4.0);
  const StateVector edge = indicator(m, 0, 3, {{1.0, 0.0}});       // [3, 4)
  const StateVector outside = indicator(m, 0, 4, {{1.0, 0.0}});    // [4, 5)
  CHECK_NOTHROW(combine({{cplx{1.0, 0.0}, edge}}));
  try {
    combine({{cplx{1.0, 0.0}, edge}, {cplx{1.0, 0.0}, outside}});
    FAIL("expected window overflow");
  } catch (const MraError& e) {
    CHECK(e.code() == errc::window_overflow);
  }
}

TEST_CASE("trim drops negligible boundary cells only") {
  const HaarModel m = make_haar_line_model();
  StateVector v = indicator(m, 0, -1,
                            {{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}});
  v.trim();
  CHECK(v.offset == 0);
  CHECK(v.coeffs.size() == 1);
  StateVector z = indicator(m, 0, 2, {{0.0, 0.0}, {0.0, 0.0}});
  z.trim();
  CHECK(z.coeffs.size() == 1);  // keeps one cell for a zero vector
}

TEST_CASE("projection onto an orthonormal family reproduces span members") {
  const HaarModel m = make_haar_line_model();
  std::vector<StateVector> family;
  for (std::int64_t k = -2; k <= 2; ++k) family.push_back(m.pair.tau(m.phi, k));
  const StateVector f = combine({{cplx{0.5, 0.5}, family[1]},
                                 {cplx{-1.0, 0.25}, family[3]}});
  const Projection p = project_onto_family(f, family);
  const double resid =
      combine({{cplx{1.0, 0.0}, f}, {cplx{-1.0, 0.0}, p.projected}}).norm();
  CHECK(resid < 1e-13);
  CHECK(std::abs(p.coefficients[1] - cplx{0.5, 0.5}) < 1e-14);
}

TEST_CASE("projection refuses a non-orthonormal family") {
  const HaarModel m = make_haar_line_model();
  try {
    project_onto_family(m.phi, {m.phi, m.phi});
    FAIL("expected non-orthonormal family error");
  } catch (const MraError& e) {
    CHECK(e.code() == errc::non_orthonormal_family);
  }
}

TEST_CASE("sequence shadows and raw coefficients agree on inner products") {
  const SequenceModel m = make_sequence_model(64);
  const StateVector b00 = sequence_atom(m, 0, 0);
  const StateVector b01 = sequence_atom(m, 0, 1);
  // exact route through the function picture
  CHECK(std::abs(inner_product(b00, b01)) < 1e-15);
  CHECK(std::abs(inner_product(b00, b00) - cplx{1.0, 0.0}) < 1e-15);
  // mixed raw/shadow route goes through the truncated coefficients
  const StateVector raw = raw_sequence_vector(m, m.space->materialize(b00));
  const cplx mixed = inner_product(raw, b00);
  const double truncated_mass = std::abs(inner_product(raw, raw));
  CHECK(std::abs(mixed - truncated_mass) < 1e-12);
  CHECK(truncated_mass < 1.0 + 1e-12);
  CHECK(truncated_mass > 0.9);  // the basis tail carries little of the atom
}

TEST_CASE("incompatible spaces are rejected") {
  const HaarModel m = make_haar_line_model();
  const SequenceModel s = make_sequence_model(32);
  try {
    inner_product(m.phi, s.phi);
    FAIL("expected incompatible spaces");
  } catch (const MraError& e) {
    CHECK(e.code() == errc::incompatible_spaces);
  }
}
