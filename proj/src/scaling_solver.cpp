#include "mrhilb/scaling_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace mrhilb {

namespace {

StateVector basis_vector(const std::shared_ptr<const ModelSpace>& space,
                         int i) {
  StateVector e;
  e.space = space;
  e.coeffs.assign(static_cast<std::size_t>(space->dim), cplx{0.0, 0.0});
  e.coeffs[static_cast<std::size_t>(i)] = cplx{1.0, 0.0};
  return e;
}

Eigen::MatrixXcd operator_matrix(
    const UnitaryPair& pair,
    const std::function<StateVector(const StateVector&)>& op) {
  const int n = pair.model->dim;
  Eigen::MatrixXcd M(n, n);
  for (int i = 0; i < n; ++i) {
    const StateVector col = op(basis_vector(pair.model, i));
    for (int k = 0; k < n; ++k)
      M(k, i) = col.coeffs[static_cast<std::size_t>(k)];
  }
  return M;
}

cplx unimodular_pow(cplx t, std::int64_t n) {
  cplx acc{1.0, 0.0};
  const cplx base = n >= 0 ? t : cplx{1.0, 0.0} / t;
  for (std::int64_t i = 0; i < std::llabs(n); ++i) acc *= base;
  return acc;
}

// Nelder-Mead on an unconstrained real vector; returns the best point found.
Eigen::VectorXd nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                            Eigen::VectorXd start, int max_iter) {
  const int n = static_cast<int>(start.size());
  std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n) + 1, start);
  std::vector<double> val(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i) + 1](i) += 0.5;
  for (std::size_t i = 0; i < pts.size(); ++i) val[i] = f(pts[i]);
  auto order = [&] {
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
    std::vector<Eigen::VectorXd> p2;
    std::vector<double> v2;
    for (std::size_t i : idx) {
      p2.push_back(pts[i]);
      v2.push_back(val[i]);
    }
    pts = std::move(p2);
    val = std::move(v2);
  };
  for (int it = 0; it < max_iter; ++it) {
    order();
    if (val.back() - val.front() < 1e-18) break;
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) centroid += pts[i];
    centroid /= n;
    const Eigen::VectorXd worst = pts.back();
    const Eigen::VectorXd refl = centroid + (centroid - worst);
    const double fr = f(refl);
    if (fr < val.front()) {
      const Eigen::VectorXd exp_ = centroid + 2.0 * (centroid - worst);
      const double fe = f(exp_);
      pts.back() = fe < fr ? exp_ : refl;
      val.back() = std::min(fe, fr);
    } else if (fr < val[val.size() - 2]) {
      pts.back() = refl;
      val.back() = fr;
    } else {
      const Eigen::VectorXd contr = centroid + 0.5 * (worst - centroid);
      const double fc = f(contr);
      if (fc < val.back()) {
        pts.back() = contr;
        val.back() = fc;
      } else {
        for (std::size_t i = 1; i < pts.size(); ++i) {
          pts[i] = pts.front() + 0.5 * (pts[i] - pts.front());
          val[i] = f(pts[i]);
        }
      }
    }
  }
  order();
  return pts.front();
}

}  // namespace

EigenSystem eigensystem_of_tau(const UnitaryPair& pair) {
  if (pair.model->kind != SpaceKind::finite_dim)
    throw MraError(errc::configuration,
                   "eigensystem construction is scoped to finite-dimensional "
                   "models");
  const Eigen::MatrixXcd M = operator_matrix(pair, pair.tau_apply);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
  if (es.info() != Eigen::Success)
    throw MraError(errc::configuration, "eigendecomposition failed");
  EigenSystem sys;
  const int n = static_cast<int>(M.rows());
  sys.vectors = es.eigenvectors();
  for (int l = 0; l < n; ++l) {
    sys.values.push_back(es.eigenvalues()(l));
    sys.vectors.col(l).normalize();
    sys.max_residual = std::max(
        sys.max_residual,
        (M * sys.vectors.col(l) - es.eigenvalues()(l) * sys.vectors.col(l))
            .norm());
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (std::abs(sys.values[static_cast<std::size_t>(a)] -
                   sys.values[static_cast<std::size_t>(b)]) < 1e-10)
        throw MraError(errc::degenerate_spectrum,
                       "eigenvalues " + std::to_string(a) + " and " +
                           std::to_string(b) + " coincide within 1e-10");
  return sys;
}

MomentSystem build_moment_system(const std::vector<cplx>& eigenvalues,
                                 int dimension_cap) {
  const int n = static_cast<int>(eigenvalues.size());
  if (n < 1) throw MraError(errc::configuration, "empty eigenvalue list");
  if (n > dimension_cap)
    throw MraError(errc::configuration,
                   "dimension " + std::to_string(n) + " exceeds the cap " +
                       std::to_string(dimension_cap));
  for (int a = 0; a < n; ++a) {
    if (std::abs(eigenvalues[static_cast<std::size_t>(a)]) < 1e-14)
      throw MraError(errc::configuration, "eigenvalues must be nonzero");
    for (int b = a + 1; b < n; ++b)
      if (std::abs(eigenvalues[static_cast<std::size_t>(a)] -
                   eigenvalues[static_cast<std::size_t>(b)]) < 1e-10)
        throw MraError(errc::degenerate_spectrum,
                       "moment system needs pairwise distinct eigenvalues");
  }
  MomentSystem sys;
  sys.eigenvalues = eigenvalues;
  sys.E.resize(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      sys.E(k, l) = std::pow(eigenvalues[static_cast<std::size_t>(l)],
                             static_cast<double>(k));
  sys.u = Eigen::VectorXcd::Zero(n);
  sys.u(0) = cplx{1.0, 0.0};
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys.E);
  const auto& sv = svd.singularValues();
  sys.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                          : std::numeric_limits<double>::infinity();
  return sys;
}

ModuliSolution solve_moduli(const MomentSystem& sys) {
  const int n = static_cast<int>(sys.eigenvalues.size());
  if (sys.condition > 1e14)
    throw MraError(errc::conditioning,
                   "moment matrix condition " + std::to_string(sys.condition) +
                       " leaves no trustworthy digits");
  // Row k of the system demands sum_l gamma_l t_l^k = u_k, so gamma_l is the
  // u-weighted coefficient sum of the l-th Lagrange basis polynomial; the
  // coefficients come from one synthetic division each of the node
  // polynomial, O(N^2) total and far more accurate than generic elimination.
  std::vector<cplx> p(static_cast<std::size_t>(n) + 1, cplx{0.0, 0.0});
  p[0] = cplx{1.0, 0.0};  // node polynomial, built up factor by factor
  for (int m = 0; m < n; ++m) {
    const cplx t = sys.eigenvalues[static_cast<std::size_t>(m)];
    for (int k = m + 1; k > 0; --k)
      p[static_cast<std::size_t>(k)] =
          p[static_cast<std::size_t>(k) - 1] - t * p[static_cast<std::size_t>(k)];
    p[0] = -t * p[0];
  }
  // p[k] multiplies t^k; p[n] = 1
  ModuliSolution sol;
  for (int l = 0; l < n; ++l) {
    const cplx t = sys.eigenvalues[static_cast<std::size_t>(l)];
    std::vector<cplx> q(static_cast<std::size_t>(n), cplx{0.0, 0.0});
    q[static_cast<std::size_t>(n) - 1] = p[static_cast<std::size_t>(n)];
    for (int k = n - 2; k >= 0; --k)
      q[static_cast<std::size_t>(k)] =
          p[static_cast<std::size_t>(k) + 1] + t * q[static_cast<std::size_t>(k) + 1];
    cplx denom{0.0, 0.0};  // Q_l(t_l) by Horner
    for (int k = n - 1; k >= 0; --k)
      denom = denom * t + q[static_cast<std::size_t>(k)];
    if (std::abs(denom) < 1e-300)
      throw MraError(errc::conditioning, "node polynomial derivative vanished");
    cplx g{0.0, 0.0};
    for (int k = 0; k < n; ++k) g += q[static_cast<std::size_t>(k)] * sys.u(k);
    sol.gamma_exact.push_back(g / denom);
  }
  sol.nonnegative = true;
  for (const cplx& g : sol.gamma_exact) {
    sol.max_imag = std::max(sol.max_imag, std::abs(g.imag()));
    sol.gamma.push_back(g.real());
    sol.sum += g.real();
    sol.nonnegative = sol.nonnegative && g.real() >= -1e-12;
  }
  sol.real_valid = sol.max_imag <= 1e-10;
  sol.feasible = sol.real_valid && sol.nonnegative;
  return sol;
}

ScalingSolveReport solve_scaling_vector(const UnitaryPair& pair,
                                        const std::vector<cplx>& h,
                                        std::int64_t h_offset, int attempts,
                                        std::uint64_t seed) {
  if (h.empty())
    throw MraError(errc::configuration, "empty filter window");
  if (attempts < 1)
    throw MraError(errc::configuration, "need at least one attempt");
  ScalingSolveReport rep;
  rep.seed = seed;
  const EigenSystem es = eigensystem_of_tau(pair);
  rep.eigenvalues = es.values;
  const int n = static_cast<int>(es.values.size());
  const MomentSystem ms = build_moment_system(es.values);
  rep.moduli = solve_moduli(ms);
  for (int k = n; k < 2 * n; ++k) {
    cplx s{0.0, 0.0};
    for (int l = 0; l < n; ++l)
      s += rep.moduli.gamma[static_cast<std::size_t>(l)] *
           unimodular_pow(es.values[static_cast<std::size_t>(l)], k);
    rep.higher_moment_residual = std::max(rep.higher_moment_residual,
                                          std::abs(s));
  }
  if (!rep.moduli.feasible) {
    rep.failure = rep.moduli.real_valid
                      ? "moduli: negative squared modulus"
                      : "moduli: no real solution of the moment system";
    return rep;
  }

  // lambda(k, l) = q_l <pi phi_l, phi_k> in the eigenbasis.
  Eigen::VectorXcd q(n);
  for (int l = 0; l < n; ++l) {
    cplx s{0.0, 0.0};
    for (std::size_t m = 0; m < h.size(); ++m)
      s += h[m] * unimodular_pow(es.values[static_cast<std::size_t>(l)],
                                 h_offset + static_cast<std::int64_t>(m));
    q(l) = s;
  }
  const Eigen::MatrixXcd pi_mat = operator_matrix(pair, pair.pi_apply);
  const Eigen::MatrixXcd pi_eig =
      es.vectors.adjoint() * pi_mat * es.vectors;  // pi_eig(k, l) = <pi phi_l, phi_k>
  Eigen::MatrixXcd lambda(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) lambda(k, l) = q(l) * pi_eig(k, l);

  Eigen::VectorXd root_gamma(n);
  for (int l = 0; l < n; ++l)
    root_gamma(l) = std::sqrt(
        std::max(0.0, rep.moduli.gamma[static_cast<std::size_t>(l)]));
  auto coords = [&](const Eigen::VectorXd& theta) {
    Eigen::VectorXcd c(n);
    for (int l = 0; l < n; ++l)
      c(l) = root_gamma(l) * std::exp(cplx{0.0, theta(l)});
    return c;
  };
  auto residual = [&](const Eigen::VectorXd& theta) {
    const Eigen::VectorXcd c = coords(theta);
    return (c - lambda * c).eval();
  };
  auto objective = [&](const Eigen::VectorXd& theta) {
    return residual(theta).squaredNorm();
  };

  Eigen::VectorXd best_theta = Eigen::VectorXd::Zero(n);
  double best = objective(best_theta);
  for (int a = 0; a < attempts; ++a) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(a) * 0x9E3779B9ULL);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    Eigen::VectorXd theta(n);
    for (int l = 0; l < n; ++l) theta(l) = angle(rng);
    theta = nelder_mead(objective, theta, 400 * n);
    // Levenberg-Marquardt polish with a numeric Jacobian
    double mu = 1e-3;
    for (int it = 0; it < 60; ++it) {
      const Eigen::VectorXcd r = residual(theta);
      Eigen::MatrixXd J(2 * n, n);
      Eigen::VectorXd rr(2 * n);
      for (int k = 0; k < n; ++k) {
        rr(2 * k) = r(k).real();
        rr(2 * k + 1) = r(k).imag();
      }
      const double step = 1e-6;
      for (int l = 0; l < n; ++l) {
        Eigen::VectorXd tp = theta, tm = theta;
        tp(l) += step;
        tm(l) -= step;
        const Eigen::VectorXcd rp = residual(tp), rm = residual(tm);
        for (int k = 0; k < n; ++k) {
          J(2 * k, l) = (rp(k).real() - rm(k).real()) / (2.0 * step);
          J(2 * k + 1, l) = (rp(k).imag() - rm(k).imag()) / (2.0 * step);
        }
      }
      const Eigen::MatrixXd JtJ = J.transpose() * J;
      const Eigen::VectorXd g = J.transpose() * rr;
      const Eigen::VectorXd delta =
          (JtJ + mu * Eigen::MatrixXd::Identity(n, n)).ldlt().solve(g);
      const Eigen::VectorXd cand = theta - delta;
      if (objective(cand) < objective(theta)) {
        theta = cand;
        mu = std::max(mu * 0.3, 1e-12);
      } else {
        mu *= 10.0;
        if (mu > 1e8) break;
      }
      if (objective(theta) < 1e-28) break;
    }
    const double f = objective(theta);
    if (f < best) {
      best = f;
      best_theta = theta;
    }
    ++rep.attempts_used;
    if (best < 1e-24) break;
  }

  rep.fixed_point_residual = std::sqrt(best);
  const Eigen::VectorXcd c = coords(best_theta);
  for (int l = 0; l < n; ++l) {
    rep.c.push_back(c(l));
    rep.theta.push_back(best_theta(l));
  }
  if (rep.fixed_point_residual >= 1e-8) {
    rep.failure = "fixed-point search stalled at residual " +
                  std::to_string(rep.fixed_point_residual);
    return rep;
  }

  StateVector phi;
  phi.space = pair.model;
  const Eigen::VectorXcd coeffs = es.vectors * c;
  phi.coeffs.assign(coeffs.data(), coeffs.data() + coeffs.size());
  ScalingSystem sys;
  sys.phi = phi;
  sys.pair = pair;
  sys.h = h;
  sys.h_offset = h_offset;
  sys.h_real = std::all_of(h.begin(), h.end(), [](const cplx& v) {
    return std::abs(v.imag()) <= kStructuralZero;
  });
  rep.tsr_resid = tsr_residual(sys);
  if (n >= 2)
    rep.orthonormality_dev =
        pairwise_orthonormality(phi, pair, 1, n - 1).max_deviation;
  ExtractOptions opts;
  opts.check_tails = false;  // finite models have a periodic index set
  const ScalingSystem rederived = extract_tsr_coefficients(
      phi, pair, h_offset, h_offset + static_cast<std::int64_t>(h.size()) - 1,
      opts);
  for (std::size_t m = 0; m < h.size(); ++m)
    rep.h_rederive_dev = std::max(
        rep.h_rederive_dev,
        std::abs(rederived.h[m] - h[m]));
  if (rep.tsr_resid > 1e-8)
    rep.failure = "validation: two-scale residual " +
                  std::to_string(rep.tsr_resid);
  else if (rep.orthonormality_dev > pair.model->tolerance)
    rep.failure = "validation: translate orthonormality deviation " +
                  std::to_string(rep.orthonormality_dev);
  else if (rep.h_rederive_dev > 1e-8)
    rep.failure = "validation: filter re-derivation deviation " +
                  std::to_string(rep.h_rederive_dev);
  if (!rep.failure.empty()) return rep;
  rep.phi = phi;
  rep.feasible = true;
  return rep;
}

}  // namespace mrhilb
