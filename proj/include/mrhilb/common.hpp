#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace mrhilb {

using cplx = std::complex<double>;

// Failure categories surfaced by the toolkit. Reports that merely record a
// bad verdict do not throw; structural misuse does.
enum class errc {
  incompatible_spaces,
  empty_combination,
  non_orthonormal_family,
  window_overflow,
  window_too_small,
  truncation_too_small,
  degenerate_spectrum,
  conditioning,
  lossy_transport,
  domain_boundary,
  configuration,
  unsupported_family,
  window_mismatch,
  parse,
};

class MraError : public std::runtime_error {
 public:
  MraError(errc code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

const char* errc_name(errc code);

// Tolerance ladder: exact-representation models (Haar grid, finite-dim)
// certify at kExactTol, quadrature-backed models at kQuadTol.
inline constexpr double kExactTol = 1e-12;
inline constexpr double kQuadTol = 1e-8;

// h-window entries below this magnitude are treated as structural zeros.
inline constexpr double kStructuralZero = 1e-13;

}  // namespace mrhilb
