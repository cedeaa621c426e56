#include "mrhilb/hilbert.hpp"

#include <algorithm>
#include <cmath>

namespace mrhilb {

const char* errc_name(errc code) {
  switch (code) {
    case errc::incompatible_spaces: return "incompatible-spaces";
    case errc::empty_combination: return "empty-combination";
    case errc::non_orthonormal_family: return "non-orthonormal-family";
    case errc::window_overflow: return "window-overflow";
    case errc::window_too_small: return "window-too-small";
    case errc::truncation_too_small: return "truncation-too-small";
    case errc::degenerate_spectrum: return "degenerate-spectrum";
    case errc::conditioning: return "conditioning";
    case errc::lossy_transport: return "lossy-transport";
    case errc::domain_boundary: return "domain-boundary";
    case errc::configuration: return "configuration";
    case errc::unsupported_family: return "unsupported-family";
    case errc::window_mismatch: return "window-mismatch";
    case errc::parse: return "parse";
  }
  return "unknown";
}

namespace {

bool grid_like(const StateVector& v) {
  switch (v.space->kind) {
    case SpaceKind::dyadic_line:
    case SpaceKind::warped_interval:
      return true;
    case SpaceKind::sequence_space:
      return v.rep == SeqRep::shadow;
    case SpaceKind::finite_dim:
      return false;
  }
  return false;
}

double cell_weight(int level) { return std::pow(2.0, -level); }

void check_grid_window(const StateVector& v) {
  const double w = cell_weight(v.level);
  const double lo = static_cast<double>(v.offset) * w;
  const double hi = static_cast<double>(v.end()) * w;
  const double R = v.space->extent;
  if (lo < -R - 1e-9 || hi > R + 1e-9)
    throw MraError(errc::window_overflow,
                   "vector window [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + ") escapes extent +-" +
                       std::to_string(R));
}

}  // namespace

bool same_space(const StateVector& u, const StateVector& v) {
  return u.space && v.space &&
         (u.space == v.space || u.space->id == v.space->id);
}

double StateVector::norm() const {
  double s = 0.0;
  for (const cplx& c : coeffs) s += std::norm(c);
  if (space && grid_like(*this)) s *= cell_weight(level);
  return std::sqrt(s);
}

void StateVector::trim(double eps) {
  std::size_t lo = 0, hi = coeffs.size();
  while (hi > lo + 1 && std::abs(coeffs[hi - 1]) <= eps) --hi;
  while (lo + 1 < hi && std::abs(coeffs[lo]) <= eps) ++lo;
  if (lo == 0 && hi == coeffs.size()) return;
  coeffs = std::vector<cplx>(coeffs.begin() + lo, coeffs.begin() + hi);
  offset += static_cast<std::int64_t>(lo);
}

StateVector refined_to_level(const StateVector& v, int level) {
  if (!grid_like(v))
    throw MraError(errc::configuration, "refinement applies to grid vectors");
  if (level < v.level)
    throw MraError(errc::configuration, "cannot coarsen by refinement");
  if (level > v.space->max_level)
    throw MraError(errc::window_overflow,
                   "refinement to level " + std::to_string(level) +
                       " exceeds model resolution " +
                       std::to_string(v.space->max_level));
  if (level == v.level) return v;
  const int shift = level - v.level;
  const std::int64_t factor = std::int64_t{1} << shift;
  StateVector out = v;
  out.level = level;
  out.offset = v.offset * factor;
  out.coeffs.assign(v.coeffs.size() * static_cast<std::size_t>(factor),
                    cplx{0.0, 0.0});
  for (std::size_t i = 0; i < v.coeffs.size(); ++i)
    for (std::int64_t r = 0; r < factor; ++r)
      out.coeffs[i * static_cast<std::size_t>(factor) +
                 static_cast<std::size_t>(r)] = v.coeffs[i];
  return out;
}

cplx inner_product(const StateVector& u, const StateVector& v) {
  if (!same_space(u, v))
    throw MraError(errc::incompatible_spaces,
                   "inner_product operands live in different model spaces");
  const SpaceKind kind = u.space->kind;
  if (kind == SpaceKind::finite_dim) {
    cplx s{0.0, 0.0};
    const std::size_t n = std::min(u.coeffs.size(), v.coeffs.size());
    for (std::size_t i = 0; i < n; ++i) s += u.coeffs[i] * std::conj(v.coeffs[i]);
    return s;
  }
  if (kind == SpaceKind::sequence_space &&
      (u.rep == SeqRep::raw || v.rep == SeqRep::raw)) {
    // Mixed representations fall back to the truncated coefficient view.
    const std::vector<cplx> a =
        u.rep == SeqRep::raw ? u.coeffs : u.space->materialize(u);
    const std::vector<cplx> b =
        v.rep == SeqRep::raw ? v.coeffs : v.space->materialize(v);
    cplx s{0.0, 0.0};
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) s += a[i] * std::conj(b[i]);
    return s;
  }
  // Grid route; for sequence shadows this evaluates the full (untruncated)
  // coefficient dot product through the isometry with the function picture.
  const int level = std::max(u.level, v.level);
  const StateVector a = refined_to_level(u, level);
  const StateVector b = refined_to_level(v, level);
  const std::int64_t lo = std::max(a.offset, b.offset);
  const std::int64_t hi = std::min(a.end(), b.end());
  cplx s{0.0, 0.0};
  for (std::int64_t i = lo; i < hi; ++i) s += a.at(i) * std::conj(b.at(i));
  return s * cell_weight(level);
}

StateVector scaled(const StateVector& v, cplx s) {
  StateVector out = v;
  for (cplx& c : out.coeffs) c *= s;
  return out;
}

StateVector combine(const std::vector<std::pair<cplx, StateVector>>& terms) {
  if (terms.empty())
    throw MraError(errc::empty_combination, "combine requires at least one term");
  for (const auto& [s, t] : terms) {
    (void)s;
    if (!same_space(t, terms.front().second))
      throw MraError(errc::incompatible_spaces,
                     "combine terms live in different model spaces");
  }
  const StateVector& first = terms.front().second;
  if (!grid_like(first)) {
    StateVector out = first;
    std::size_t n = 0;
    for (const auto& [s, t] : terms) n = std::max(n, t.coeffs.size());
    out.coeffs.assign(n, cplx{0.0, 0.0});
    for (const auto& [s, t] : terms)
      for (std::size_t i = 0; i < t.coeffs.size(); ++i)
        out.coeffs[i] += s * t.coeffs[i];
    return out;
  }
  int level = first.level;
  for (const auto& [s, t] : terms) level = std::max(level, t.level);
  std::int64_t lo = 0, hi = 0;
  bool started = false;
  std::vector<StateVector> aligned;
  aligned.reserve(terms.size());
  for (const auto& [s, t] : terms) {
    (void)s;
    aligned.push_back(refined_to_level(t, level));
    const StateVector& a = aligned.back();
    if (!started) {
      lo = a.offset;
      hi = a.end();
      started = true;
    } else {
      lo = std::min(lo, a.offset);
      hi = std::max(hi, a.end());
    }
  }
  StateVector out = aligned.front();
  out.level = level;
  out.offset = lo;
  out.coeffs.assign(static_cast<std::size_t>(hi - lo), cplx{0.0, 0.0});
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const cplx s = terms[k].first;
    const StateVector& a = aligned[k];
    for (std::int64_t i = a.offset; i < a.end(); ++i)
      out.coeffs[static_cast<std::size_t>(i - lo)] += s * a.at(i);
  }
  check_grid_window(out);
  return out;
}

Projection project_onto_family(const StateVector& f,
                               const std::vector<StateVector>& family,
                               bool check_orthonormal, double tol) {
  if (tol <= 0.0) tol = f.space ? f.space->tolerance : kExactTol;
  if (check_orthonormal) {
    double worst = 0.0;
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t j = i; j < family.size(); ++j) {
        const cplx g = inner_product(family[i], family[j]);
        const double dev = std::abs(g - (i == j ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));
        worst = std::max(worst, dev);
      }
    if (worst > tol)
      throw MraError(errc::non_orthonormal_family,
                     "family Gram deviation " + std::to_string(worst) +
                         " exceeds tolerance " + std::to_string(tol));
  }
  Projection out;
  out.coefficients.reserve(family.size());
  std::vector<std::pair<cplx, StateVector>> terms;
  for (const StateVector& e : family) {
    const cplx c = inner_product(f, e);
    out.coefficients.push_back(c);
    terms.emplace_back(c, e);
  }
  if (terms.empty()) {
    out.projected = scaled(f, 0.0);
  } else {
    out.projected = combine(terms);
  }
  return out;
}

}  // namespace mrhilb
