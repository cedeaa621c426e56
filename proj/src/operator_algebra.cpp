#include "mrhilb/operator_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace mrhilb {

StateVector UnitaryPair::tau(const StateVector& v, std::int64_t exponent) const {
  if (tau_power) return tau_power(v, exponent);
  StateVector out = v;
  const auto& step = exponent >= 0 ? tau_apply : tau_inverse;
  for (std::int64_t i = 0; i < std::llabs(exponent); ++i) out = step(out);
  return out;
}

StateVector UnitaryPair::pi(const StateVector& v, int exponent) const {
  if (pi_power) return pi_power(v, exponent);
  StateVector out = v;
  const auto& step = exponent >= 0 ? pi_apply : pi_inverse;
  for (int i = 0; i < std::abs(exponent); ++i) out = step(out);
  return out;
}

StateVector apply_word(const UnitaryPair& pair, const OperatorWord& word,
                       const StateVector& v) {
  StateVector out = v;
  for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) {
    const auto [gen, exp] = *it;
    try {
      out = gen == Gen::tau ? pair.tau(out, exp)
                            : pair.pi(out, static_cast<int>(exp));
    } catch (const MraError& e) {
      if (e.code() == errc::window_overflow)
        throw MraError(errc::window_overflow,
                       std::string(gen == Gen::tau ? "tau^" : "pi^") +
                           std::to_string(exp) + ": " + e.what());
      throw;
    }
  }
  return out;
}

namespace {

double dist(const StateVector& a, const StateVector& b) {
  return combine({{cplx{1.0, 0.0}, a}, {cplx{-1.0, 0.0}, b}}).norm();
}

}  // namespace

double UnitarityReport::worst() const {
  return std::max({max_tau_norm_dev, max_pi_norm_dev, max_tau_roundtrip,
                   max_pi_roundtrip});
}

UnitarityReport verify_unitarity(const UnitaryPair& pair, int trials,
                                 std::uint64_t seed) {
  if (trials < 1)
    throw MraError(errc::configuration, "verify_unitarity needs trials >= 1");
  UnitarityReport rep;
  rep.model = pair.label;
  rep.trials = trials;
  rep.tolerance = pair.model->tolerance;
  for (int t = 0; t < trials; ++t) {
    const StateVector v = pair.random_vector(seed + static_cast<std::uint64_t>(t));
    const double nv = v.norm();
    const StateVector tv = pair.tau_apply(v);
    const StateVector pv = pair.pi_apply(v);
    rep.max_tau_norm_dev = std::max(rep.max_tau_norm_dev, std::abs(tv.norm() - nv));
    rep.max_pi_norm_dev = std::max(rep.max_pi_norm_dev, std::abs(pv.norm() - nv));
    rep.max_tau_roundtrip =
        std::max(rep.max_tau_roundtrip, dist(pair.tau_inverse(tv), v));
    rep.max_pi_roundtrip =
        std::max(rep.max_pi_roundtrip, dist(pair.pi_inverse(pv), v));
  }
  rep.pass = rep.worst() < rep.tolerance;
  return rep;
}

CommutationReport verify_commutation_law(const UnitaryPair& pair, int kmax,
                                         std::int64_t lmax, int trials,
                                         std::uint64_t seed) {
  if (kmax < 0)
    throw MraError(errc::configuration, "verify_commutation_law needs kmax >= 0");
  CommutationReport rep;
  rep.model = pair.label;
  rep.kmax = kmax;
  rep.lmax = lmax;
  rep.tolerance = pair.model->tolerance;

  std::vector<StateVector> probes;
  const bool exhaustive = pair.model->kind == SpaceKind::finite_dim &&
                          pair.model->dim <= 4096;
  if (exhaustive) {
    for (int i = 0; i < pair.model->dim; ++i) {
      StateVector e;
      e.space = pair.model;
      e.coeffs.assign(static_cast<std::size_t>(pair.model->dim), cplx{0.0, 0.0});
      e.coeffs[static_cast<std::size_t>(i)] = cplx{1.0, 0.0};
      probes.push_back(std::move(e));
    }
  } else {
    for (int t = 0; t < trials; ++t)
      probes.push_back(pair.random_vector(seed + static_cast<std::uint64_t>(t)));
  }
  rep.trials = static_cast<int>(probes.size());

  for (const StateVector& v : probes) {
    for (int k = 0; k <= kmax; ++k) {
      const std::int64_t scale = std::int64_t{1} << k;
      const StateVector pik_v = pair.pi(v, k);
      const StateVector pimk_v = pair.pi(v, -k);
      for (std::int64_t l = -lmax; l <= lmax; ++l) {
        try {
          const double fwd =
              dist(pair.tau(pik_v, l), pair.pi(pair.tau(v, scale * l), k));
          const double inv =
              dist(pair.tau(pimk_v, scale * l), pair.pi(pair.tau(v, l), -k));
          if (std::max(fwd, inv) >
              std::max(rep.max_residual_forward, rep.max_residual_inverse)) {
            rep.worst_k = k;
            rep.worst_l = l;
          }
          rep.max_residual_forward = std::max(rep.max_residual_forward, fwd);
          rep.max_residual_inverse = std::max(rep.max_residual_inverse, inv);
        } catch (const MraError& e) {
          if (e.code() == errc::window_overflow)
            throw MraError(errc::window_overflow,
                           "commutation probe (k=" + std::to_string(k) +
                               ", l=" + std::to_string(l) + "): " + e.what());
          throw;
        }
      }
    }
  }
  rep.pass = std::max(rep.max_residual_forward, rep.max_residual_inverse) <
             rep.tolerance;
  return rep;
}

}  // namespace mrhilb
