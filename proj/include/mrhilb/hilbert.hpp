#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "mrhilb/common.hpp"

namespace mrhilb {

enum class SpaceKind { dyadic_line, warped_interval, sequence_space, finite_dim };

// A finite truncation of one of the model Hilbert spaces. Grid kinds carry a
// dyadic resolution cap and a half-extent in internal coordinates; sequence
// and finite kinds carry a basis truncation size.
struct ModelSpace {
  SpaceKind kind = SpaceKind::dyadic_line;
  std::string id;
  int max_level = 0;     // finest representable dyadic level (grid kinds)
  double extent = 0.0;   // half-extent R of the internal coordinate window
  int dim = 0;           // basis truncation (sequence_space, finite_dim)
  double tolerance = kExactTol;
  double trunc_tolerance = kExactTol;  // looser bound for truncated views

  // Sequence models install a hook that expands a shadow-represented vector
  // into its truncated coefficient array.
  std::function<std::vector<cplx>(const struct StateVector&)> materialize;
};

// How a sequence-space vector is stored: through its exact piecewise-constant
// preimage (shadow) or as a raw truncated coefficient array.
enum class SeqRep { shadow, raw };

// A vector of the model space. Grid kinds (and sequence shadows) store
// piecewise-constant cell values: cell i at dyadic level l covers
// [i*2^-l, (i+1)*2^-l) and `offset` is the index of the first stored cell.
// Out-of-window cells are implicitly zero. Values are immutable by
// convention once built.
struct StateVector {
  std::shared_ptr<const ModelSpace> space;
  int level = 0;
  std::int64_t offset = 0;
  std::vector<cplx> coeffs;
  SeqRep rep = SeqRep::shadow;

  std::int64_t end() const {
    return offset + static_cast<std::int64_t>(coeffs.size());
  }
  cplx at(std::int64_t cell) const {
    return (cell >= offset && cell < end())
               ? coeffs[static_cast<std::size_t>(cell - offset)]
               : cplx{0.0, 0.0};
  }
  double norm() const;

  // Drops negligible boundary cells; keeps at least one cell.
  void trim(double eps = 0.0);
};

bool same_space(const StateVector& u, const StateVector& v);

// Returns a copy of `v` re-expressed at a finer dyadic level (grid kinds).
StateVector refined_to_level(const StateVector& v, int level);

// The model inner product, conjugate-linear in the second argument:
// <u, v> = sum_i u_i conj(v_i) * weight. Grid kinds weight by the cell
// width, sequence/finite kinds use the plain conjugate dot product.
cplx inner_product(const StateVector& u, const StateVector& v);

// Exact finite linear combination sum_i scalar_i * vector_i.
StateVector combine(const std::vector<std::pair<cplx, StateVector>>& terms);

StateVector scaled(const StateVector& v, cplx s);

struct Projection {
  StateVector projected;
  std::vector<cplx> coefficients;
};

// Orthogonal projection of f onto the span of an orthonormal family.
// When check_orthonormal is set, the family Gram matrix is verified first.
Projection project_onto_family(const StateVector& f,
                               const std::vector<StateVector>& family,
                               bool check_orthonormal = true,
                               double tol = 0.0);

}  // namespace mrhilb
