#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mrhilb/hilbert.hpp"

namespace mrhilb {

// The (tau, pi) pair of Definition-style translation and dilation actions.
// Actions are callables with explicit inverses so grid models never
// materialize operator matrices; finite-dim models back them by 2x2 (or NxN)
// matrix products. The pair carries the commutation contract tau pi = pi tau^2,
// certified by verify_commutation_law rather than assumed.
struct UnitaryPair {
  std::shared_ptr<const ModelSpace> model;
  std::string label;
  std::function<StateVector(const StateVector&)> tau_apply;
  std::function<StateVector(const StateVector&)> tau_inverse;
  std::function<StateVector(const StateVector&)> pi_apply;
  std::function<StateVector(const StateVector&)> pi_inverse;
  // Deterministic seeded test-vector source for certification suites.
  std::function<StateVector(std::uint64_t)> random_vector;
  // Optional fast iterated application (e.g. matrix powers by squaring for
  // finite models, where stepwise application would accumulate error).
  std::function<StateVector(const StateVector&, std::int64_t)> tau_power;
  std::function<StateVector(const StateVector&, std::int64_t)> pi_power;

  StateVector tau(const StateVector& v, std::int64_t exponent) const;
  StateVector pi(const StateVector& v, int exponent) const;
};

enum class Gen { tau, pi };

// A finite word in the generators, e.g. pi^-1 tau^3. Applied right-to-left.
struct OperatorWord {
  std::vector<std::pair<Gen, std::int64_t>> factors;
};

StateVector apply_word(const UnitaryPair& pair, const OperatorWord& word,
                       const StateVector& v);

struct UnitarityReport {
  std::string model;
  int trials = 0;
  double max_tau_norm_dev = 0.0;
  double max_pi_norm_dev = 0.0;
  double max_tau_roundtrip = 0.0;
  double max_pi_roundtrip = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double worst() const;
};

UnitarityReport verify_unitarity(const UnitaryPair& pair, int trials,
                                 std::uint64_t seed);

struct CommutationReport {
  std::string model;
  int kmax = 0;
  std::int64_t lmax = 0;
  int trials = 0;
  // max over trials/(k,l) of ||tau^l pi^k v - pi^k tau^(2^k l) v||
  double max_residual_forward = 0.0;
  // max of ||tau^(2^k l) pi^-k v - pi^-k tau^l v||
  double max_residual_inverse = 0.0;
  int worst_k = 0;
  std::int64_t worst_l = 0;
  double tolerance = 0.0;
  bool pass = false;
};

// Certifies both lines of the iterated commutation law on seeded random
// vectors. An exhaustive basis mode is used instead when the model is
// finite-dimensional with dim <= 4096.
CommutationReport verify_commutation_law(const UnitaryPair& pair, int kmax,
                                         std::int64_t lmax, int trials,
                                         std::uint64_t seed);

}  // namespace mrhilb
