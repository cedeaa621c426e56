#include "mrhilb/serialize.hpp"

#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace mrhilb {

namespace {

ordered_json complex_pair(const cplx& c) {
  return ordered_json::array({c.real(), c.imag()});
}

}  // namespace

ordered_json vector_to_json(const StateVector& v) {
  ordered_json j;
  j["space"] = v.space ? v.space->id : "";
  j["rep"] = v.rep == SeqRep::raw ? "raw" : "shadow";
  j["level"] = v.level;
  j["offset"] = v.offset;
  ordered_json re = ordered_json::array(), im = ordered_json::array();
  for (const cplx& c : v.coeffs) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

StateVector vector_from_json(const ordered_json& j,
                             const std::shared_ptr<const ModelSpace>& space) {
  if (!j.contains("re") || !j.contains("im") || !j.contains("offset"))
    throw MraError(errc::parse, "vector record needs offset/re/im fields");
  if (j.contains("space") && space &&
      j.at("space").get<std::string>() != space->id)
    throw MraError(errc::incompatible_spaces,
                   "vector record belongs to space " +
                       j.at("space").get<std::string>());
  StateVector v;
  v.space = space;
  v.level = j.value("level", 0);
  v.offset = j.at("offset").get<std::int64_t>();
  if (j.value("rep", "shadow") == std::string("raw")) v.rep = SeqRep::raw;
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (re.size() != im.size())
    throw MraError(errc::parse, "re/im arrays differ in length");
  for (std::size_t i = 0; i < re.size(); ++i)
    v.coeffs.emplace_back(re[i].get<double>(), im[i].get<double>());
  return v;
}

ordered_json to_json(const UnitarityReport& r) {
  return ordered_json{{"check", "unitarity"},
                      {"model", r.model},
                      {"trials", r.trials},
                      {"tau_norm_deviation", r.max_tau_norm_dev},
                      {"pi_norm_deviation", r.max_pi_norm_dev},
                      {"tau_roundtrip", r.max_tau_roundtrip},
                      {"pi_roundtrip", r.max_pi_roundtrip},
                      {"tolerance", r.tolerance},
                      {"pass", r.pass}};
}

ordered_json to_json(const CommutationReport& r) {
  return ordered_json{{"check", "commutation"},
                      {"model", r.model},
                      {"kmax", r.kmax},
                      {"lmax", r.lmax},
                      {"trials", r.trials},
                      {"residual_forward", r.max_residual_forward},
                      {"residual_inverse", r.max_residual_inverse},
                      {"worst_k", r.worst_k},
                      {"worst_l", r.worst_l},
                      {"tolerance", r.tolerance},
                      {"pass", r.pass}};
}

ordered_json to_json(const OrthonormalityReport& r) {
  ordered_json j{{"check", "orthonormality"},
                 {"max_deviation", r.max_deviation},
                 {"worst_k", r.worst_k},
                 {"pass", r.pass}};
  if (r.coefficient_side_deviation)
    j["coefficient_side_deviation"] = *r.coefficient_side_deviation;
  if (r.route_disagreement) j["route_disagreement"] = *r.route_disagreement;
  return j;
}

ordered_json to_json(const CrossOrthogonalityReport& r) {
  ordered_json values = ordered_json::object();
  for (const auto& [k, v] : r.values) values[std::to_string(k)] = complex_pair(v);
  return ordered_json{{"check", "cross-orthogonality"},
                      {"max_abs", r.max_abs},
                      {"worst_k", r.worst_k},
                      {"values", std::move(values)},
                      {"filter_real", r.h_real},
                      {"wavelet_in_detail_space", r.in_w0}};
}

ordered_json to_json(const KInvertibilityReport& r) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows)
    rows.push_back(ordered_json{{"radius", row.radius},
                                {"smallest_singular", row.smallest_singular},
                                {"condition", row.condition}});
  return ordered_json{{"check", "filter-matrix-invertibility"},
                      {"floor", r.floor},
                      {"rows", std::move(rows)},
                      {"numerically_invertible", r.numerically_invertible}};
}

ordered_json to_json(const DecompositionReport& r) {
  ordered_json norms = ordered_json::object(), resid = ordered_json::object();
  for (const auto& [j, v] : r.projection_norms) norms[std::to_string(j)] = v;
  for (const auto& [j, v] : r.residuals) resid[std::to_string(j)] = v;
  return ordered_json{{"model", r.model_id},
                      {"variant", r.variant == WaveletVariant::standard
                                      ? "standard"
                                      : "alternate"},
                      {"j_lo", r.j_lo},
                      {"j_hi", r.j_hi},
                      {"k_lo", r.k_lo},
                      {"k_hi", r.k_hi},
                      {"coefficients", r.detail.size()},
                      {"projection_norms", std::move(norms)},
                      {"residuals", std::move(resid)},
                      {"energy_split_error", r.energy_split_error},
                      {"tail_identity_error", r.tail_identity_error},
                      {"window_adequate", r.window_adequate},
                      {"pass", r.pass}};
}

ordered_json to_json(const IntersectionDiagnostic& r) {
  return ordered_json{{"check", "projection-decay"},
                      {"norms", r.norms},
                      {"l1_norm", r.l1_norm},
                      {"fitted_decay_rate", r.fitted_decay_rate},
                      {"bound_ok", r.bound_ok},
                      {"monotone", r.monotone}};
}

ordered_json to_json(const DensityDiagnostic& r) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.per_sample)
    entries.push_back(
        ordered_json{{"ratio", e.ratio}, {"j0", e.j0}, {"k0", e.k0}});
  return ordered_json{{"check", "translate-density-scan"},
                      {"per_sample", std::move(entries)},
                      {"min_ratio", r.min_ratio}};
}

ordered_json to_json(const ModuliSolution& r) {
  ordered_json exact = ordered_json::array();
  for (const cplx& g : r.gamma_exact) exact.push_back(complex_pair(g));
  return ordered_json{{"gamma", r.gamma},
                      {"gamma_exact", std::move(exact)},
                      {"max_imag", r.max_imag},
                      {"sum", r.sum},
                      {"real_valid", r.real_valid},
                      {"nonnegative", r.nonnegative},
                      {"feasible", r.feasible}};
}

ordered_json to_json(const ScalingSolveReport& r) {
  ordered_json ev = ordered_json::array(), c = ordered_json::array();
  for (const cplx& t : r.eigenvalues) ev.push_back(complex_pair(t));
  for (const cplx& v : r.c) c.push_back(complex_pair(v));
  ordered_json j{{"feasible", r.feasible},
                 {"failure", r.failure},
                 {"dimension", r.eigenvalues.size()},
                 {"eigenvalues", std::move(ev)},
                 {"moduli", to_json(r.moduli)},
                 {"c", std::move(c)},
                 {"theta", r.theta},
                 {"fixed_point_residual", r.fixed_point_residual},
                 {"higher_moment_residual", r.higher_moment_residual},
                 {"attempts_used", r.attempts_used},
                 {"seed", r.seed}};
  if (r.feasible) {
    j["candidate"] = vector_to_json(r.phi);
    j["validation"] = ordered_json{{"tsr_residual", r.tsr_resid},
                                   {"gram_deviation", r.orthonormality_dev},
                                   {"filter_rederivation", r.h_rederive_dev}};
  }
  return j;
}

void write_cells_csv(std::ostream& os, const StateVector& v) {
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "index,re,im\n";
  for (std::int64_t i = v.offset; i < v.end(); ++i) {
    const cplx c = v.at(i);
    os << i << "," << c.real() << "," << c.imag() << "\n";
  }
}

StateVector read_cells_csv(std::istream& is,
                           const std::shared_ptr<const ModelSpace>& space,
                           int level) {
  StateVector v;
  v.space = space;
  v.level = level;
  std::string line;
  std::map<std::int64_t, cplx> cells;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("index", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    std::istringstream row(line);
    std::string field;
    std::int64_t idx = 0;
    double re = 0.0, im = 0.0;
    try {
      if (!std::getline(row, field, ',')) throw std::invalid_argument(line);
      idx = std::stoll(field);
      if (!std::getline(row, field, ',')) throw std::invalid_argument(line);
      re = std::stod(field);
      if (std::getline(row, field, ',')) im = std::stod(field);
    } catch (const std::exception&) {
      throw MraError(errc::parse, "malformed CSV row: " + line);
    }
    cells[idx] = cplx{re, im};
  }
  if (cells.empty()) throw MraError(errc::parse, "empty CSV input");
  v.offset = cells.begin()->first;
  v.coeffs.assign(
      static_cast<std::size_t>(cells.rbegin()->first - v.offset + 1),
      cplx{0.0, 0.0});
  for (const auto& [idx, c] : cells)
    v.coeffs[static_cast<std::size_t>(idx - v.offset)] = c;
  return v;
}

void write_detail_csv(std::ostream& os, const DecompositionReport& r) {
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "j,k,re,im\n";
  for (const auto& [jl, c] : r.detail)
    os << jl.first << "," << jl.second << "," << c.real() << "," << c.imag()
       << "\n";
}

void read_detail_csv(std::istream& is, DecompositionReport& r) {
  std::string line;
  bool first = true;
  bool any = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("j,", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    std::istringstream row(line);
    std::string field;
    try {
      std::getline(row, field, ',');
      const int j = std::stoi(field);
      std::getline(row, field, ',');
      const std::int64_t k = std::stoll(field);
      std::getline(row, field, ',');
      const double re = std::stod(field);
      double im = 0.0;
      if (std::getline(row, field, ',')) im = std::stod(field);
      r.detail[{j, k}] = cplx{re, im};
      r.j_lo = any ? std::min(r.j_lo, j) : j;
      r.j_hi = any ? std::max(r.j_hi, j) : j;
      r.k_lo = any ? std::min(r.k_lo, k) : k;
      r.k_hi = any ? std::max(r.k_hi, k) : k;
      any = true;
    } catch (const std::exception&) {
      throw MraError(errc::parse, "malformed CSV row: " + line);
    }
  }
  if (!any) throw MraError(errc::parse, "empty detail CSV");
}

}  // namespace mrhilb
