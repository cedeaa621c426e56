#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mrhilb/models.hpp"

using namespace mrhilb;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ScalingSystem haar_system() {
  const HaarModel m = make_haar_line_model();
  return extract_tsr_coefficients(m.phi, m.pair, -6, 6);
}

}  // namespace

TEST_CASE("two-scale coefficients of the dyadic-line scaling vector") {
  const ScalingSystem sys = haar_system();
  // the window trims to the two genuine taps h_0 = h_1 = 1/sqrt(2)
  CHECK(sys.h_lo() == 0);
  CHECK(sys.h_hi() == 1);
  CHECK(std::abs(sys.h_at(0) - cplx{kInvSqrt2, 0.0}) < 1e-14);
  CHECK(std::abs(sys.h_at(1) - cplx{kInvSqrt2, 0.0}) < 1e-14);
  CHECK(sys.h_real);
  CHECK(tsr_residual(sys) < 1e-14);
}

TEST_CASE("extraction refuses a window that clips a live coefficient") {
  const HaarModel m = make_haar_line_model();
  try {
    extract_tsr_coefficients(m.phi, m.pair, 0, 1);
    FAIL("expected window_too_small");
  } catch (const MraError& e) {
    CHECK(e.code() == errc::window_too_small);
  }
  // tail checking off: the same window is accepted verbatim
  ExtractOptions opts;
  opts.check_tails = false;
  const ScalingSystem sys = extract_tsr_coefficients(m.phi, m.pair, 0, 1, opts);
  CHECK(sys.h.size() == 2);
  CHECK(tsr_residual(sys) < 1e-14);
}

TEST_CASE("filter matrix truncations have the known singular floor") {
  const ScalingSystem sys = haar_system();
  for (int radius : {2, 4, 8}) {
    const std::vector<double> sv = k_singular_values(build_k_matrix(sys, radius));
    CHECK(sv.back() == doctest::Approx(kInvSqrt2).epsilon(1e-12));
    CHECK(sv.front() / sv.back() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
  const KInvertibilityReport rep = assess_k_invertibility(sys, {2, 4, 8}, 0.5);
  CHECK(rep.numerically_invertible);
  CHECK(rep.rows.size() == 3);
  for (const KInvertibilityRow& row : rep.rows)
    CHECK(row.smallest_singular == doctest::Approx(kInvSqrt2).epsilon(1e-12));
  // a floor above the true smallest singular value flips the verdict
  CHECK_FALSE(assess_k_invertibility(sys, {2, 4}, 0.8).numerically_invertible);
}

TEST_CASE("filter matrix construction rejects a too-small radius") {
  const ScalingSystem sys = haar_system();
  try {
    build_k_matrix(sys, 0);
    FAIL("expected truncation_too_small");
  } catch (const MraError& e) {
    CHECK(e.code() == errc::truncation_too_small);
  }
  try {
    assess_k_invertibility(sys, {4, 2});
    FAIL("expected configuration error for non-increasing radii");
  } catch (const MraError& e) {
    CHECK(e.code() == errc::configuration);
  }
}

TEST_CASE("mother wavelet cell values on the dyadic line") {
  const ScalingSystem sys = haar_system();
  const WaveletFamily std_fam =
      construct_mother_wavelet(sys, WaveletVariant::standard);
  // standard: +1 on [-1/2, 0), -1 on [-1, -1/2)
  CHECK(std_fam.psi.level == 1);
  CHECK(std::abs(std_fam.psi.at(-1) - cplx{1.0, 0.0}) < 1e-14);
  CHECK(std::abs(std_fam.psi.at(-2) - cplx{-1.0, 0.0}) < 1e-14);
  CHECK(std_fam.psi.norm() == doctest::Approx(1.0).epsilon(1e-14));

  const WaveletFamily alt_fam =
      construct_mother_wavelet(sys, WaveletVariant::alternate);
  // alternate: +1 on [0, 1/2), -1 on [1/2, 1)
  CHECK(std::abs(alt_fam.psi.at(0) - cplx{1.0, 0.0}) < 1e-14);
  CHECK(std::abs(alt_fam.psi.at(1) - cplx{-1.0, 0.0}) < 1e-14);

  // both variants are orthogonal to every translate of the scaling vector
  for (const WaveletFamily& fam : {std_fam, alt_fam}) {
    const CrossOrthogonalityReport rep = cross_orthogonality(fam, -6, 6);
    CHECK(rep.in_w0);
    CHECK(rep.max_abs < 1e-14);
  }
}

TEST_CASE("orthonormality routes agree: inner products vs filter sums") {
  const ScalingSystem sys = haar_system();
  const OrthonormalityReport rep =
      pairwise_orthonormality(sys.phi, sys.pair, -6, 6, &sys);
  CHECK(rep.pass);
  CHECK(rep.max_deviation < 1e-14);
  REQUIRE(rep.coefficient_side_deviation.has_value());
  REQUIRE(rep.route_disagreement.has_value());
  CHECK(*rep.coefficient_side_deviation < 1e-14);
  CHECK(*rep.route_disagreement < 1e-14);
}

TEST_CASE("filter autocorrelation implements the quadrature-mirror sums") {
  const ScalingSystem sys = haar_system();
  CHECK(std::abs(filter_autocorrelation(sys, 0) - cplx{1.0, 0.0}) < 1e-14);
  for (std::int64_t k : {-2, -1, 1, 2})
    CHECK(std::abs(filter_autocorrelation(sys, k)) < 1e-14);
}

TEST_CASE("wavelet family grid is orthonormal across scales and shifts") {
  const WaveletFamily fam =
      construct_mother_wavelet(haar_system(), WaveletVariant::standard);
  const WaveletFamilyGrid grid = generate_wavelet_family(fam, -1, 1, -2, 2);
  CHECK(grid.members.size() == 15);
  CHECK(grid.gram_deviation < 1e-12);
  CHECK(grid.members.front().j == -1);
  CHECK(grid.members.front().k == -2);
}

TEST_CASE("complex filter window passes the coefficient identities") {
  const ScalingSystem sys = make_complex_counterexample_system();
  CHECK(sys.formal);
  CHECK_FALSE(sys.h_real);
  double mass = 0.0;
  for (const cplx& c : sys.h) mass += std::norm(c);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(filter_autocorrelation(sys, 0) - cplx{1.0, 0.0}) < 1e-14);
  for (std::int64_t k : {-1, 1})
    CHECK(std::abs(filter_autocorrelation(sys, k)) < 1e-14);
}

TEST_CASE("complex filter wavelet escapes the detail space") {
  const ScalingSystem sys = make_complex_counterexample_system();
  const WaveletFamily fam =
      construct_mother_wavelet(sys, WaveletVariant::standard);
  // the wavelet itself is still a unit vector orthogonal to its own shifts
  const OrthonormalityReport on =
      pairwise_orthonormality(fam.psi, sys.pair, -4, 4);
  CHECK(on.pass);
  // but <Psi, tau^-1 Phi> = -i/2: not orthogonal to the scaling translates
  const CrossOrthogonalityReport rep = cross_orthogonality(fam, -4, 4);
  CHECK_FALSE(rep.in_w0);
  CHECK(rep.max_abs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(rep.values.at(-1) - cplx{0.0, -0.5}) < 1e-13);
}

TEST_CASE("parity-side switch transposes the filter matrix convention") {
  const ScalingSystem sys = haar_system();
  const KMatrix cols = build_k_matrix(sys, 3, true);
  const KMatrix rows = build_k_matrix(sys, 3, false);
  CHECK(cols.entries.rows() == 7);
  // the two conventions genuinely differ entry-wise for this filter
  CHECK((cols.entries - rows.entries).norm() > 0.1);
  // parity on rows leaves a zero boundary row under truncation, so the
  // sensitivity run shows why the column convention is the default
  CHECK(k_singular_values(rows).back() < 1e-14);
  CHECK(k_singular_values(cols).back() > 0.5);
}
