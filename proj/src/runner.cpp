#include "hkcce/runner.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <utility>

#include "hkcce/compactification.hpp"
#include "hkcce/format.hpp"
#include "hkcce/hk_verifier.hpp"
#include "hkcce/jet_algebra.hpp"
#include "hkcce/report.hpp"
#include "hkcce/scattering.hpp"
#include "hkcce/special_fn.hpp"

namespace hkcce {

namespace fs = std::filesystem;

namespace {

constexpr double kQRelTol = 1e-6;
constexpr double kAdaptedResidualTol = 1e-5;
constexpr double kLeeResidualTol = 1e-8;
constexpr double kBoundaryRelTol = 1e-6;
constexpr double kAsymptoticTol = 1e-8;

struct Case {
  int n = 4;
  double gamma = 0.5;
  double k = 1.0;
  CompactKind kind = CompactKind::adapted;
};

std::string case_label(const Case& c, bool with_gamma) {
  std::string s = "n" + std::to_string(c.n);
  if (with_gamma) s += "_g" + format_number(c.gamma);
  return s + "_k" + format_number(c.k);
}

/// Cases sorted by (n, gamma, k); lee cases carry gamma = NaN and are listed once per (n, k).
std::vector<Case> grid(const RunConfig& cfg, CompactKind kind) {
  std::vector<Case> out;
  for (int n : cfg.n) {
    if (kind == CompactKind::lee) {
      for (double k : cfg.k) out.push_back({n, std::nan(""), k, kind});
      continue;
    }
    for (double g : cfg.gamma)
      for (double k : cfg.k) out.push_back({n, g, k, kind});
  }
  return out;
}

VerifyOptions verify_options(const RunConfig& cfg) {
  VerifyOptions o;
  o.ode_tol = cfg.ode_tol;
  o.quad_tol = cfg.quad_tol;
  o.T = cfg.T;
  return o;
}

VerificationReport error_report(const std::string& name, const Case& c, const RunConfig& cfg, const std::string& what) {
  VerificationReport r;
  r.name = name;
  r.n = c.n;
  r.gamma = c.gamma;
  r.k = c.k;
  r.ode_tol = cfg.ode_tol;
  r.quad_tol = cfg.quad_tol;
  r.match_T = cfg.T;
  r.lhs = r.rhs = r.gap = r.err_est = std::nan("");
  r.verdict = Verdict::fail;
  r.pass = false;
  r.message = "error: " + what;
  return r;
}

struct CommandResult {
  std::string stem;
  nlohmann::json reports = nlohmann::json::array();
  std::vector<std::pair<std::string, CsvTable>> tables;
  std::vector<std::pair<std::string, nlohmann::json>> extra_reports;  // stem -> json
  std::vector<std::pair<std::string, std::string>> raw_tables;        // stem -> csv text
  std::vector<std::string> failing_cases;
  int cases = 0;
};

// ---------------------------------------------------------------------------

CommandResult run_qcurv(const RunConfig& cfg) {
  CommandResult res;
  res.stem = "qcurv";
  const auto cases = grid(cfg, CompactKind::adapted);
  struct Row {
    std::optional<ScatteringResult> sr;
    double oracle = 0.0;
    std::string error;
  };
  const auto rows = parallel_map<Row>(cases.size(), cfg.jobs, [&](std::size_t i) {
    Row row;
    const Case& c = cases[i];
    try {
      const QCurvParams p = QCurvParams::make(c.n, c.gamma, c.k);
      row.oracle = sphere_q_oracle(p);
      row.sr = q_curvature(p, ScatteringOptions{cfg.ode_tol, cfg.T, kDefaultFrobeniusOrder});
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    return row;
  });
  CsvTable table({"n", "gamma", "k", "Q_num", "Q_oracle", "rel_err", "S", "condition", "consistency_gap", "verdict"});
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    const Row& row = rows[i];
    if (!row.sr) {
      table.add_row({cell(c.n), cell(c.gamma), cell(c.k), "nan", cell(row.oracle), "nan", "nan", "nan", "nan", "fail"});
      res.reports.push_back({{"name", "qcurv"},
                             {"params", {{"n", c.n}, {"gamma", json_number(c.gamma)}, {"k", json_number(c.k)}}},
                             {"verdict", "fail"},
                             {"pass", false},
                             {"message", "error: " + row.error}});
      res.failing_cases.push_back(case_label(c, true));
      continue;
    }
    const ScatteringResult& sr = *row.sr;
    const double rel = std::abs(sr.q_value - row.oracle) / std::abs(row.oracle);
    const bool ok = rel <= kQRelTol && sr.q_value > 0.0;
    table.add_row({cell(c.n), cell(c.gamma), cell(c.k), cell(sr.q_value), cell(row.oracle), cell(rel),
                   cell(sr.scattering_value), cell(sr.condition_estimate), cell(sr.consistency_gap),
                   ok ? "equality" : "fail"});
    nlohmann::json j = to_json(sr, row.oracle);
    j["verdict"] = ok ? "equality" : "fail";
    j["pass"] = ok;
    res.reports.push_back(j);
    if (!ok) res.failing_cases.push_back(case_label(c, true));
  }
  res.tables.emplace_back("qcurv", std::move(table));
  res.cases = static_cast<int>(cases.size());
  return res;
}

// ---------------------------------------------------------------------------

using VerifyFn = VerificationReport (*)(const Case&, const VerifyOptions&);

CommandResult run_verify(const RunConfig& cfg, const std::string& stem, const std::vector<Case>& cases, VerifyFn fn) {
  CommandResult res;
  res.stem = stem;
  const VerifyOptions opts = verify_options(cfg);
  const auto reports = parallel_map<VerificationReport>(cases.size(), cfg.jobs, [&](std::size_t i) {
    try {
      return fn(cases[i], opts);
    } catch (const std::exception& e) {
      return error_report(stem, cases[i], cfg, e.what());
    }
  });
  CsvTable table({"name", "n", "gamma", "k", "lhs", "rhs", "gap", "err_est", "remainder_1", "remainder_2",
                  "scaling_exponent", "verdict", "expected", "pass"});
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const VerificationReport& r = reports[i];
    const double r1 = r.remainders.size() > 0 ? r.remainders[0].value : 0.0;
    const double r2 = r.remainders.size() > 1 ? r.remainders[1].value : 0.0;
    table.add_row({r.name, cell(r.n), cell(r.gamma), cell(r.k), cell(r.lhs), cell(r.rhs), cell(r.gap),
                   cell(r.err_est), cell(r1), cell(r2), cell(r.scaling_exponent), to_string(r.verdict),
                   to_string(r.expected), r.pass ? "true" : "false"});
    res.reports.push_back(to_json(r));
    if (!r.pass) res.failing_cases.push_back(r.name + "_" + case_label(cases[i], !std::isnan(cases[i].gamma)));
  }
  res.tables.emplace_back(stem, std::move(table));
  res.cases = static_cast<int>(cases.size());
  return res;
}

VerificationReport do_adapted(const Case& c, const VerifyOptions& o) { return verify_adapted(c.n, c.gamma, c.k, o); }
VerificationReport do_cla(const Case& c, const VerifyOptions& o) { return verify_cla(c.n, c.k, o); }
VerificationReport do_lee(const Case& c, const VerifyOptions& o) { return verify_lee(c.n, c.k, o); }
VerificationReport do_defect(const Case& c, const VerifyOptions& o) {
  return defect_identity(c.kind, c.n, c.gamma, c.k, o);
}

// ---------------------------------------------------------------------------

CommandResult run_prop21(const RunConfig& cfg) {
  CommandResult res;
  res.stem = "prop21";
  const auto certs = parallel_map<std::optional<jets::Prop21Certificate>>(
      cfg.n.size(), cfg.jobs, [&](std::size_t i) { return std::optional(jets::verify_prop21(cfg.n[i])); });
  CsvTable table({"n", "beta_E2_coefficient", "beta_E2_expected", "alpha1_equals_beta1", "checks_passed",
                  "checks_total", "pass"});
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const auto& c = *certs[i];
    const nlohmann::json j = to_json(c);
    int passed = 0;
    for (const auto& chk : c.checks) passed += chk.pass ? 1 : 0;
    table.add_row({cell(c.n), j["beta_E2_coefficient"].get<std::string>(), j["beta_E2_expected"].get<std::string>(),
                   c.alpha1 == c.beta1 ? "true" : "false", cell(passed), cell(static_cast<int>(c.checks.size())),
                   c.all_pass() ? "true" : "false"});
    res.reports.push_back(j);
    res.extra_reports.emplace_back("prop21_n" + std::to_string(c.n), j);
    if (!c.all_pass()) res.failing_cases.push_back("prop21_n" + std::to_string(c.n));
  }
  res.tables.emplace_back("prop21", std::move(table));
  res.cases = static_cast<int>(certs.size());
  return res;
}

// ---------------------------------------------------------------------------

CommandResult run_residuals(const RunConfig& cfg) {
  CommandResult res;
  res.stem = "residuals";
  std::vector<Case> cases;
  for (CompactKind kind : cfg.kinds) {
    const auto g = grid(cfg, kind);
    cases.insert(cases.end(), g.begin(), g.end());
  }
  struct Row {
    std::optional<ResidualSuite> suite;
    std::string profile;
    std::string error;
  };
  const auto rows = parallel_map<Row>(cases.size(), cfg.jobs, [&](std::size_t i) {
    Row row;
    const Case& c = cases[i];
    try {
      const ModelSpace m(c.n, c.k);
      const CompactifiedGeometry g =
          c.kind == CompactKind::lee
              ? build_lee(m)
              : build_adapted(m, c.gamma, ScatteringOptions{cfg.ode_tol, cfg.T, kDefaultFrobeniusOrder});
      row.suite = residual_suite(g);
      if (cfg.emit_csv) row.profile = profile_csv(g, window_taus(m, kWindowSamples));
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    return row;
  });
  CsvTable table({"kind", "n", "gamma", "k", "res_rho", "res_T_or_J", "J_crosscheck", "min_W", "trace_mismatch",
                  "boundary_W", "boundary_expected", "boundary_rel_err", "pass"});
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    const Row& row = rows[i];
    const std::string label = to_string(c.kind) + "_" + case_label(c, c.kind == CompactKind::adapted);
    if (!row.suite) {
      table.add_row({to_string(c.kind), cell(c.n), cell(c.gamma), cell(c.k), "nan", "nan", "nan", "nan", "nan", "nan",
                     "nan", "nan", "false"});
      res.reports.push_back({{"name", "residuals-" + to_string(c.kind)},
                             {"params", {{"n", c.n}, {"gamma", json_number(c.gamma)}, {"k", json_number(c.k)}}},
                             {"pass", false},
                             {"message", "error: " + row.error}});
      res.failing_cases.push_back(label);
      continue;
    }
    const ResidualSuite& s = *row.suite;
    const double tol = c.kind == CompactKind::lee ? kLeeResidualTol : kAdaptedResidualTol;
    const bool ok = s.rho.sup <= tol && s.W.sup <= tol && s.J_crosscheck.sup <= tol && s.min_W > 0.0 &&
                    s.boundary_rel_err <= kBoundaryRelTol;
    table.add_row({to_string(c.kind), cell(c.n), cell(c.gamma), cell(c.k), cell(s.rho.sup), cell(s.W.sup),
                   cell(s.J_crosscheck.sup), cell(s.min_W), cell(s.max_trace_mismatch),
                   cell(s.boundary_W_extrapolated), cell(s.boundary_W_expected), cell(s.boundary_rel_err),
                   ok ? "true" : "false"});
    nlohmann::json j = to_json(s, c.n, c.gamma, c.k);
    j["tolerance"] = json_number(tol);
    j["pass"] = ok;
    res.reports.push_back(j);
    if (!ok) res.failing_cases.push_back(label);
  }
  res.tables.emplace_back("residuals", std::move(table));
  res.cases = static_cast<int>(cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (rows[i].profile.empty()) continue;
    const Case& c = cases[i];
    res.raw_tables.emplace_back("profile_" + to_string(c.kind) + "_" + case_label(c, c.kind == CompactKind::adapted),
                                rows[i].profile);
  }
  return res;
}

// ---------------------------------------------------------------------------

CommandResult run_asymptotic(const RunConfig& cfg) {
  CommandResult res;
  res.stem = "asymptotic";
  const auto cases = grid(cfg, CompactKind::lee);  // (n, k) pairs
  const auto tables = parallel_map<std::vector<AsymptoticRow>>(cases.size(), cfg.jobs, [&](std::size_t i) {
    const auto r = asymptotic_radii(cases[i].k, cfg.points);
    return asymptotic_ratio(cases[i].n, cases[i].k, r);
  });
  CsvTable table({"n", "k", "r", "ratio", "abs_err"});
  for (std::size_t i = 0; i < cases.size(); ++i) {
    double worst = 0.0;
    for (const auto& row : tables[i]) {
      table.add_row({cell(row.n), cell(row.k), cell(row.r), cell(row.ratio), cell(row.abs_err)});
      worst = std::max(worst, row.abs_err);
    }
    const bool ok = worst <= kAsymptoticTol;
    res.reports.push_back({{"name", "asymptotic"},
                           {"params", {{"n", cases[i].n}, {"k", json_number(cases[i].k)}, {"points", cfg.points}}},
                           {"max_abs_err", json_number(worst)},
                           {"tolerance", json_number(kAsymptoticTol)},
                           {"verdict", ok ? "equality" : "fail"},
                           {"pass", ok}});
    if (!ok) res.failing_cases.push_back("asymptotic_" + case_label(cases[i], false));
  }
  res.tables.emplace_back("asymptotic", std::move(table));
  res.cases = static_cast<int>(cases.size());
  return res;
}

// ---------------------------------------------------------------------------

CommandResult run_sweep(const RunConfig& cfg) {
  CommandResult res;
  res.stem = "sweep";
  const auto cases = grid(cfg, CompactKind::adapted);
  const VerifyOptions opts = verify_options(cfg);
  struct Row {
    VerificationReport report;
    double oracle = 0.0;
  };
  const auto rows = parallel_map<Row>(cases.size(), cfg.jobs, [&](std::size_t i) {
    const Case& c = cases[i];
    Row row;
    try {
      row.oracle = sphere_q_oracle(QCurvParams::make(c.n, c.gamma, c.k));
      row.report = verify_adapted(c.n, c.gamma, c.k, opts);
    } catch (const std::exception& e) {
      row.report = error_report("hk-adapted", c, cfg, e.what());
    }
    return row;
  });
  CsvTable table({"n", "gamma", "k", "Q_num", "Q_oracle", "rel_err", "lhs", "rhs", "gap", "verdict"});
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    VerificationReport r = rows[i].report;
    const double q = r.diagnostic("Q");
    const double rel = std::abs(q - rows[i].oracle) / std::abs(rows[i].oracle);
    if (!(rel <= kQRelTol)) {
      r.verdict = Verdict::fail;
      r.pass = false;
      if (r.message.empty()) r.message = "Q differs from the oracle";
    }
    table.add_row({cell(c.n), cell(c.gamma), cell(c.k), cell(q), cell(rows[i].oracle), cell(rel), cell(r.lhs),
                   cell(r.rhs), cell(r.gap), to_string(r.verdict)});
    nlohmann::json j = to_json(r);
    j["Q_oracle"] = json_number(rows[i].oracle);
    j["Q_rel_err"] = json_number(rel);
    res.reports.push_back(j);
    if (!r.pass) res.failing_cases.push_back(case_label(c, true));
  }
  res.tables.emplace_back("sweep", std::move(table));
  res.cases = static_cast<int>(cases.size());
  return res;
}

CommandResult dispatch(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::qcurv: return run_qcurv(cfg);
    case Command::verify_hk_adapted: return run_verify(cfg, "hk-adapted", grid(cfg, CompactKind::adapted), do_adapted);
    case Command::verify_hk_cla: return run_verify(cfg, "hk-cla", grid(cfg, CompactKind::adapted), do_cla);
    case Command::verify_hk_lee: return run_verify(cfg, "hk-lee", grid(cfg, CompactKind::lee), do_lee);
    case Command::verify_defect: {
      std::vector<Case> cases;
      for (CompactKind kind : cfg.kinds) {
        const auto g = grid(cfg, kind);
        cases.insert(cases.end(), g.begin(), g.end());
      }
      return run_verify(cfg, "defect", cases, do_defect);
    }
    case Command::verify_prop21: return run_prop21(cfg);
    case Command::residuals: return run_residuals(cfg);
    case Command::asymptotic: return run_asymptotic(cfg);
    case Command::sweep: return run_sweep(cfg);
  }
  throw UsageError("unknown command");
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json gammas = nlohmann::json::array(), ks = nlohmann::json::array(), kinds = nlohmann::json::array();
  for (double g : cfg.gamma) gammas.push_back(json_number(g));
  for (double k : cfg.k) ks.push_back(json_number(k));
  for (CompactKind kind : cfg.kinds) kinds.push_back(to_string(kind));
  return {{"command", command_name(cfg.command)},
          {"n", cfg.n},
          {"gamma", gammas},
          {"k", ks},
          {"ode_tol", json_number(cfg.ode_tol)},
          {"quad_tol", json_number(cfg.quad_tol)},
          {"T", json_number(cfg.T)},
          {"frobenius_order", kDefaultFrobeniusOrder},
          {"out", cfg.out_dir},
          {"csv", cfg.emit_csv},
          {"json", cfg.emit_json},
          {"jobs", cfg.jobs},
          {"kind", kinds},
          {"points", cfg.points},
          {"config_file", cfg.config_file}};
}

}  // namespace

RunOutcome run_command(const RunConfig& cfg, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome outcome;
  outcome.out_dir = cfg.out_dir;
  CommandResult res = dispatch(cfg);
  outcome.cases = res.cases;

  const fs::path report_rel = fs::path("reports") / (res.stem + ".json");
  try {
    if (cfg.emit_json) {
      write_atomic(outcome.out_dir / report_rel,
                   dump({{"command", command_name(cfg.command)}, {"reports", res.reports}}));
      outcome.written.push_back(report_rel);
      for (const auto& [stem, j] : res.extra_reports) {
        const fs::path rel = fs::path("reports") / (stem + ".json");
        write_atomic(outcome.out_dir / rel, dump(j));
        outcome.written.push_back(rel);
      }
    }
    if (cfg.emit_csv) {
      for (const auto& [stem, table] : res.tables) {
        const fs::path rel = fs::path("tables") / (stem + ".csv");
        write_atomic(outcome.out_dir / rel, table.str());
        outcome.written.push_back(rel);
      }
      for (const auto& [stem, text] : res.raw_tables) {
        const fs::path rel = fs::path("tables") / (stem + ".csv");
        write_atomic(outcome.out_dir / rel, text);
        outcome.written.push_back(rel);
      }
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    nlohmann::json files = nlohmann::json::array();
    for (const auto& f : outcome.written) files.push_back(f.generic_string());
    outcome.exit_code = res.failing_cases.empty() ? kExitOk : kExitFail;
    const nlohmann::json manifest = {{"tool", "hkcce"},
                                     {"version", kToolVersion},
                                     {"config", config_json(cfg)},
                                     {"cases", res.cases},
                                     {"failures", res.failing_cases},
                                     {"exit_code", outcome.exit_code},
                                     {"wall_clock_seconds", json_number(wall)},
                                     {"files", files}};
    write_atomic(outcome.out_dir / "manifest.json", dump(manifest));
    outcome.written.push_back("manifest.json");
  } catch (const IoError& e) {
    log << "I/O error: " << e.what() << "\n";
    outcome.exit_code = kExitIo;
    return outcome;
  }

  const std::string report_path =
      cfg.emit_json ? (outcome.out_dir / report_rel).string() : (outcome.out_dir / "manifest.json").string();
  for (const auto& c : res.failing_cases) outcome.failing.push_back(c + " -> " + report_path);
  log << command_name(cfg.command) << ": " << res.cases << " case(s), " << res.failing_cases.size() << " failing\n";
  for (const auto& f : outcome.failing) log << "FAIL " << f << "\n";
  log << "output: " << outcome.out_dir.string() << "\n";
  return outcome;
}

}  // namespace hkcce
