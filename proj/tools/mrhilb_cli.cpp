// Command-line front end for the multi-resolution toolkit: model
// verification suites, wavelet construction, signal decomposition and
// reconstruction, and the finite-dimensional scaling-vector solver.
//
// Exit codes: 0 = all requested checks passed (or pure computation
// succeeded), 1 = a verification check failed or a runtime window/overflow
// error occurred, 2 = usage or configuration error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mrhilb/serialize.hpp"

namespace {

using namespace mrhilb;

constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
  std::string model = "haar";
  int level = 12;
  double extent = 80.0;
  int truncation = 128;
  int jmin = -1;
  int jmax = 1;
  std::int64_t kmin = -6;
  std::int64_t kmax = 6;
  std::string variant = "standard";
  double tolerance = 0.0;  // 0 = model default
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
  std::string input;
  int input_level = 0;
  std::string details;
  std::string coarse;
  int attempts = 16;
  std::vector<double> h_re;
  std::vector<double> h_im;
  std::int64_t h_offset = 0;
};

ordered_json config_to_json(const RunConfig& c) {
  return ordered_json{{"model", c.model},
                      {"level", c.level},
                      {"extent", c.extent},
                      {"truncation", c.truncation},
                      {"jmin", c.jmin},
                      {"jmax", c.jmax},
                      {"kmin", c.kmin},
                      {"kmax", c.kmax},
                      {"variant", c.variant},
                      {"tolerance", c.tolerance},
                      {"seed", c.seed},
                      {"format", c.format},
                      {"out", c.out},
                      {"input", c.input},
                      {"input_level", c.input_level},
                      {"details", c.details},
                      {"coarse", c.coarse},
                      {"attempts", c.attempts},
                      {"h_re", c.h_re},
                      {"h_im", c.h_im},
                      {"h_offset", c.h_offset}};
}

void merge_config_file(RunConfig& c, const std::string& path,
                       const CLI::App& cmd) {
  std::ifstream in(path);
  if (!in) throw MraError(errc::parse, "cannot open config file " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw MraError(errc::parse, std::string("config parse: ") + e.what());
  }
  auto set_if = [&](const char* key, const char* flag, auto& field) {
    if (!j.contains(key)) return;
    // command-line flags win over the file
    if (cmd.count(flag) == 0)
      field = j.at(key).get<std::decay_t<decltype(field)>>();
    j.erase(key);
  };
  set_if("model", "--model", c.model);
  set_if("level", "--level", c.level);
  set_if("extent", "--extent", c.extent);
  set_if("truncation", "--truncation", c.truncation);
  set_if("jmin", "--jmin", c.jmin);
  set_if("jmax", "--jmax", c.jmax);
  set_if("kmin", "--kmin", c.kmin);
  set_if("kmax", "--kmax", c.kmax);
  set_if("variant", "--variant", c.variant);
  set_if("tolerance", "--tolerance", c.tolerance);
  set_if("seed", "--seed", c.seed);
  set_if("format", "--format", c.format);
  set_if("out", "--out", c.out);
  set_if("input", "--input", c.input);
  set_if("input_level", "--input-level", c.input_level);
  set_if("details", "--details", c.details);
  set_if("coarse", "--coarse", c.coarse);
  set_if("attempts", "--attempts", c.attempts);
  set_if("h_re", "--h-re", c.h_re);
  set_if("h_im", "--h-im", c.h_im);
  set_if("h_offset", "--h-offset", c.h_offset);
  if (!j.empty())
    throw MraError(errc::parse,
                   "unknown config key: " + j.begin().key());
}

struct BuiltModel {
  std::shared_ptr<const ModelSpace> space;
  UnitaryPair pair;
  std::optional<ScalingSystem> system;
  std::optional<SequenceModel> sequence;
  bool warped = false;
  std::vector<cplx> solver_h;  // default filter for solve-scaling
  std::int64_t solver_h_offset = 0;
};

ScalingSystem extract_system(const StateVector& phi, const UnitaryPair& pair) {
  return extract_tsr_coefficients(phi, pair, -6, 6);
}

BuiltModel build_model(const RunConfig& c) {
  BuiltModel b;
  if (c.model == "haar") {
    HaarModel m = make_haar_line_model(c.level, c.extent);
    b.space = m.space;
    b.pair = m.pair;
    b.system = extract_system(m.phi, m.pair);
  } else if (c.model == "warped") {
    WarpedModel m = make_warped_interval_model(c.level, c.extent);
    b.space = m.space;
    b.pair = m.pair;
    b.warped = true;
    b.system = extract_system(m.rho, m.pair);
  } else if (c.model == "sequence") {
    SequenceModel m = make_sequence_model(c.truncation, c.level, c.extent);
    b.space = m.space;
    b.pair = m.pair;
    b.system = extract_system(m.phi, m.pair);
    b.sequence = std::move(m);
  } else if (c.model == "counterexample") {
    ScalingSystem sys = make_complex_counterexample_system();
    b.space = sys.pair.model;
    b.pair = sys.pair;
    b.system = std::move(sys);
  } else if (c.model == "pauli") {
    FiniteModel m = make_finite_pair_model({1.0, 0.0, 0.0}, {0.0, 0.0, 1.0},
                                           0.0);
    b.space = m.space;
    b.pair = m.pair;
    b.solver_h = {cplx{1.0, 0.0}};
  } else if (c.model == "fixture4") {
    SolverFixture fx = make_solver_fixture4();
    b.space = fx.model.space;
    b.pair = fx.model.pair;
    b.solver_h = fx.h;
    b.solver_h_offset = fx.h_offset;
  } else if (c.model == "dim1") {
    const Eigen::MatrixXcd one = Eigen::MatrixXcd::Identity(1, 1);
    FiniteModel m = make_matrix_pair_model("dim-1", one, one);
    b.space = m.space;
    b.pair = m.pair;
    b.solver_h = {cplx{1.0, 0.0}};
  } else {
    throw MraError(errc::configuration, "unknown model: " + c.model);
  }
  return b;
}

WaveletVariant parse_variant(const std::string& v) {
  if (v == "standard") return WaveletVariant::standard;
  if (v == "alternate") return WaveletVariant::alternate;
  throw MraError(errc::configuration, "unknown variant: " + v);
}

ordered_json report_envelope(const RunConfig& c, const std::string& command) {
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  return ordered_json{
      {"tool", "mrhilb-cli"},
      {"version", kToolVersion},
      {"command", command},
      {"seed", c.seed},
      {"config", config_to_json(c)},
      {"timestamp",
       std::chrono::duration_cast<std::chrono::milliseconds>(now).count()}};
}

void emit(const RunConfig& c, const ordered_json& j) {
  if (c.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(c.out);
    if (!out) throw MraError(errc::configuration, "cannot write " + c.out);
    out << j.dump(2) << "\n";
  }
}

int cmd_verify(const RunConfig& c) {
  BuiltModel b = build_model(c);
  ordered_json rep = report_envelope(c, "verify");
  ordered_json checks = ordered_json::array();
  std::vector<std::string> failed;
  auto record = [&](const ordered_json& j, bool pass, const std::string& name) {
    checks.push_back(j);
    if (!pass) failed.push_back(name);
  };

  const UnitarityReport unit = verify_unitarity(b.pair, 8, c.seed);
  record(to_json(unit), unit.pass, "unitarity");
  const CommutationReport comm =
      verify_commutation_law(b.pair, 3, 8, 8, c.seed);
  record(to_json(comm), comm.pass, "commutation");

  if (b.system) {
    const ScalingSystem& sys = *b.system;
    const double tol = c.tolerance > 0.0 ? c.tolerance
                                         : b.space->tolerance;
    const double tsr = tsr_residual(sys);
    record(ordered_json{{"check", "two-scale-residual"},
                        {"residual", tsr},
                        {"tolerance", tol},
                        {"pass", tsr < tol}},
           tsr < tol, "two-scale-residual");
    const OrthonormalityReport orth =
        pairwise_orthonormality(sys.phi, b.pair, -6, 6, &sys, c.tolerance);
    record(to_json(orth), orth.pass, "orthonormality");
    const WaveletFamily fam =
        construct_mother_wavelet(sys, parse_variant(c.variant));
    const CrossOrthogonalityReport cross =
        cross_orthogonality(fam, -6, 6, c.tolerance);
    ordered_json cj = to_json(cross);
    if (!cross.in_w0 && cross.values.count(cross.worst_k))
      cj["worst_value"] = ordered_json::array(
          {cross.values.at(cross.worst_k).real(),
           cross.values.at(cross.worst_k).imag()});
    record(cj, cross.in_w0, "cross-orthogonality");
  }
  rep["checks"] = std::move(checks);
  rep["failed"] = failed;
  rep["pass"] = failed.empty();
  emit(c, rep);
  if (!failed.empty()) {
    for (const std::string& name : failed)
      std::cerr << "check failed: " << name << "\n";
    return 1;
  }
  return 0;
}

int cmd_wavelet(const RunConfig& c) {
  BuiltModel b = build_model(c);
  if (!b.system)
    throw MraError(errc::configuration,
                   "model " + c.model + " carries no scaling system");
  const WaveletFamily fam =
      construct_mother_wavelet(*b.system, parse_variant(c.variant));
  ordered_json rep = report_envelope(c, "wavelet");
  rep["variant"] = c.variant;
  rep["psi"] = vector_to_json(fam.psi);
  rep["psi_norm"] = fam.psi.norm();
  if (b.warped) {
    ordered_json samples = ordered_json::array();
    for (int i = 1; i < 200; ++i) {
      const double x = i / 200.0;
      const cplx v = evaluate_warped(fam.psi, x);
      samples.push_back(ordered_json::array({x, v.real(), v.imag()}));
    }
    rep["samples_x"] = std::move(samples);
  }
  if (b.sequence) {
    const std::vector<cplx> coeffs = b.space->materialize(fam.psi);
    ordered_json re = ordered_json::array(), im = ordered_json::array();
    for (const cplx& v : coeffs) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    rep["coefficients_re"] = std::move(re);
    rep["coefficients_im"] = std::move(im);
  }
  emit(c, rep);
  return 0;
}

int cmd_decompose(const RunConfig& c) {
  BuiltModel b = build_model(c);
  if (!b.system)
    throw MraError(errc::configuration,
                   "model " + c.model + " carries no scaling system");
  if (c.input.empty())
    throw MraError(errc::parse, "decompose needs --input");
  std::ifstream in(c.input);
  if (!in) throw MraError(errc::parse, "cannot open input " + c.input);
  const StateVector f = read_cells_csv(in, b.space, c.input_level);
  const WaveletFamily fam =
      construct_mother_wavelet(*b.system, parse_variant(c.variant));
  const DecompositionReport report =
      detail_coefficients(f, fam, c.jmin, c.jmax, c.kmin, c.kmax);
  const ProjectionResult coarse =
      project_level(f, c.jmax, *b.system, c.kmin, c.kmax);
  const ReconstructionResult recon =
      reconstruct(report, fam, coarse.projected);
  const double resid =
      combine({{cplx{1.0, 0.0}, f}, {cplx{-1.0, 0.0}, recon.vec}}).norm();

  ordered_json rep = report_envelope(c, "decompose");
  rep["decomposition"] = to_json(report);
  rep["reconstruction_residual"] = resid;
  if (!c.out.empty()) {
    std::ofstream details(c.out + ".details.csv");
    write_detail_csv(details, report);
    std::ofstream coarse_out(c.out + ".coarse.json");
    coarse_out << vector_to_json(coarse.projected).dump(2) << "\n";
    rep["details_file"] = c.out + ".details.csv";
    rep["coarse_file"] = c.out + ".coarse.json";
  }
  emit(c, rep);
  return 0;
}

int cmd_reconstruct(const RunConfig& c) {
  BuiltModel b = build_model(c);
  if (!b.system)
    throw MraError(errc::configuration,
                   "model " + c.model + " carries no scaling system");
  if (c.details.empty() || c.coarse.empty())
    throw MraError(errc::parse, "reconstruct needs --details and --coarse");
  const WaveletFamily fam =
      construct_mother_wavelet(*b.system, parse_variant(c.variant));
  DecompositionReport report;
  report.model_id = b.space->id;
  report.variant = fam.variant;
  std::ifstream details(c.details);
  if (!details) throw MraError(errc::parse, "cannot open " + c.details);
  read_detail_csv(details, report);
  std::ifstream coarse_in(c.coarse);
  if (!coarse_in) throw MraError(errc::parse, "cannot open " + c.coarse);
  ordered_json cj;
  try {
    coarse_in >> cj;
  } catch (const std::exception& e) {
    throw MraError(errc::parse, std::string("coarse parse: ") + e.what());
  }
  const StateVector coarse = vector_from_json(cj, b.space);
  const ReconstructionResult recon = reconstruct(report, fam, coarse);
  ordered_json rep = report_envelope(c, "reconstruct");
  rep["vector"] = vector_to_json(recon.vec);
  rep["norm"] = recon.vec.norm();
  emit(c, rep);
  return 0;
}

int cmd_solve_scaling(const RunConfig& c) {
  BuiltModel b = build_model(c);
  if (b.space->kind != SpaceKind::finite_dim)
    throw MraError(errc::configuration,
                   "the scaling-vector solver is scoped to finite-dimensional "
                   "models");
  std::vector<cplx> h = b.solver_h;
  std::int64_t h_offset = b.solver_h_offset;
  if (!c.h_re.empty()) {
    if (!c.h_im.empty() && c.h_im.size() != c.h_re.size())
      throw MraError(errc::parse, "h_re and h_im lengths differ");
    h.clear();
    for (std::size_t i = 0; i < c.h_re.size(); ++i)
      h.emplace_back(c.h_re[i], c.h_im.empty() ? 0.0 : c.h_im[i]);
    h_offset = c.h_offset;
  }
  if (h.empty())
    throw MraError(errc::configuration,
                   "no filter window: pass --h-re (and optionally --h-im)");
  const ScalingSolveReport report =
      solve_scaling_vector(b.pair, h, h_offset, c.attempts, c.seed);
  ordered_json rep = report_envelope(c, "solve-scaling");
  rep["solver"] = to_json(report);
  emit(c, rep);
  return 0;
}

int cmd_report(const RunConfig& c) {
  BuiltModel b = build_model(c);
  ordered_json rep = report_envelope(c, "report");
  const UnitarityReport unit = verify_unitarity(b.pair, 8, c.seed);
  const CommutationReport comm =
      verify_commutation_law(b.pair, 3, 8, 8, c.seed);
  rep["unitarity"] = to_json(unit);
  rep["commutation"] = to_json(comm);
  bool pass = unit.pass && comm.pass;
  if (b.system) {
    const ScalingSystem& sys = *b.system;
    rep["filter"] = [&] {
      ordered_json taps = ordered_json::array();
      for (std::int64_t n = sys.h_lo(); n <= sys.h_hi(); ++n)
        taps.push_back(ordered_json::array(
            {n, sys.h_at(n).real(), sys.h_at(n).imag()}));
      return taps;
    }();
    const KInvertibilityReport kinv =
        assess_k_invertibility(sys, {2, 4, 8});
    rep["k_matrix"] = to_json(kinv);
    pass = pass && kinv.numerically_invertible;
    const IntersectionDiagnostic decay =
        intersection_diagnostic(sys.phi, sys, std::max(0, c.jmax));
    rep["projection_decay"] = to_json(decay);
  }
  rep["pass"] = pass;
  emit(c, rep);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-resolution toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_path;

  std::vector<CLI::App*> cmds;
  for (const char* name : {"verify", "wavelet", "decompose", "reconstruct",
                           "solve-scaling", "report"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--model", cfg.model,
                    "haar|warped|sequence|counterexample|pauli|fixture4|dim1");
    sub->add_option("--level", cfg.level, "finest dyadic level");
    sub->add_option("--extent", cfg.extent, "half-extent of the grid window");
    sub->add_option("--truncation", cfg.truncation,
                    "sequence basis truncation");
    sub->add_option("--jmin", cfg.jmin, "coarsest/finest level window start");
    sub->add_option("--jmax", cfg.jmax, "level window end");
    sub->add_option("--kmin", cfg.kmin, "translation window start");
    sub->add_option("--kmax", cfg.kmax, "translation window end");
    sub->add_option("--variant", cfg.variant, "standard|alternate");
    sub->add_option("--tolerance", cfg.tolerance, "override check tolerance");
    sub->add_option("--seed", cfg.seed, "deterministic seed");
    sub->add_option("--format", cfg.format, "json|csv");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--input", cfg.input, "input CSV (decompose)");
    sub->add_option("--input-level", cfg.input_level,
                    "dyadic level of the input CSV");
    sub->add_option("--details", cfg.details, "detail CSV (reconstruct)");
    sub->add_option("--coarse", cfg.coarse, "coarse JSON (reconstruct)");
    sub->add_option("--attempts", cfg.attempts, "solver restarts");
    sub->add_option("--h-re", cfg.h_re, "filter real parts (solve-scaling)");
    sub->add_option("--h-im", cfg.h_im, "filter imaginary parts");
    sub->add_option("--h-offset", cfg.h_offset, "index of the first tap");
    cmds.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* active = nullptr;
    for (CLI::App* sub : cmds)
      if (sub->parsed()) active = sub;
    if (!config_path.empty()) merge_config_file(cfg, config_path, *active);
    const std::string name = active->get_name();
    if (name == "verify") return cmd_verify(cfg);
    if (name == "wavelet") return cmd_wavelet(cfg);
    if (name == "decompose") return cmd_decompose(cfg);
    if (name == "reconstruct") return cmd_reconstruct(cfg);
    if (name == "solve-scaling") return cmd_solve_scaling(cfg);
    return cmd_report(cfg);
  } catch (const MraError& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what()
              << "\n";
    return (e.code() == errc::parse || e.code() == errc::configuration) ? 2
                                                                        : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
