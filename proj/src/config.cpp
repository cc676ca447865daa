#include "hkcce/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hkcce/format.hpp"
#include "hkcce/special_fn.hpp"

namespace hkcce {

std::string command_name(Command c) {
  switch (c) {
    case Command::qcurv: return "qcurv";
    case Command::verify_hk_adapted: return "verify hk-adapted";
    case Command::verify_hk_cla: return "verify hk-cla";
    case Command::verify_hk_lee: return "verify hk-lee";
    case Command::verify_defect: return "verify defect";
    case Command::verify_prop21: return "verify prop21";
    case Command::residuals: return "residuals";
    case Command::asymptotic: return "asymptotic";
    case Command::sweep: return "sweep";
  }
  return "unknown";
}

std::string command_stem(Command c) {
  const std::string name = command_name(c);
  const auto space = name.find(' ');
  return space == std::string::npos ? name : name.substr(space + 1);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

int to_int(const std::string& s) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

double to_double(const std::string& s) {
  double v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

CompactKind to_kind(const std::string& s) {
  if (s == "adapted") return CompactKind::adapted;
  if (s == "lee") return CompactKind::lee;
  throw UsageError("unknown kind '" + s + "' (expected adapted or lee)");
}

std::vector<CompactKind> parse_kinds(const std::string& text) {
  if (text == "both") return {CompactKind::adapted, CompactKind::lee};
  std::vector<CompactKind> out;
  for (const auto& item : split(text, ',')) out.push_back(to_kind(item));
  if (out.empty()) throw UsageError("empty kind list");
  return out;
}

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// A JSON value that is a number, an array of numbers, or a list string.
std::vector<int> json_ints(const nlohmann::json& j, const std::string& key) {
  if (j.is_string()) return parse_int_list(j.get<std::string>());
  if (j.is_number_integer()) return {j.get<int>()};
  if (j.is_array()) {
    std::vector<int> out;
    for (const auto& e : j) {
      if (!e.is_number_integer()) throw UsageError("config: '" + key + "' must hold integers");
      out.push_back(e.get<int>());
    }
    sort_unique(out);
    return out;
  }
  throw UsageError("config: '" + key + "' must be an integer, a list, or a range string");
}

std::vector<double> json_doubles(const nlohmann::json& j, const std::string& key) {
  if (j.is_string()) return parse_double_list(j.get<std::string>());
  if (j.is_number()) return {j.get<double>()};
  if (j.is_array()) {
    std::vector<double> out;
    for (const auto& e : j) {
      if (!e.is_number()) throw UsageError("config: '" + key + "' must hold numbers");
      out.push_back(e.get<double>());
    }
    sort_unique(out);
    return out;
  }
  throw UsageError("config: '" + key + "' must be a number or a list");
}

double json_number(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number()) throw UsageError("config: '" + key + "' must be a number");
  return j.get<double>();
}

bool json_bool(const nlohmann::json& j, const std::string& key) {
  if (!j.is_boolean()) throw UsageError("config: '" + key + "' must be true or false");
  return j.get<bool>();
}

int json_int(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number_integer()) throw UsageError("config: '" + key + "' must be an integer");
  return j.get<int>();
}

struct Explicit {
  bool n = false, gamma = false, k = false, kind = false;
};

Explicit apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file '" + path + "' must hold a JSON object");
  Explicit seen;
  for (const auto& [key, v] : j.items()) {
    if (key == "n") {
      cfg.n = json_ints(v, key);
      seen.n = true;
    } else if (key == "gamma") {
      cfg.gamma = json_doubles(v, key);
      seen.gamma = true;
    } else if (key == "k") {
      cfg.k = json_doubles(v, key);
      seen.k = true;
    } else if (key == "ode_tol") {
      cfg.ode_tol = json_number(v, key);
    } else if (key == "quad_tol") {
      cfg.quad_tol = json_number(v, key);
    } else if (key == "T") {
      cfg.T = json_number(v, key);
    } else if (key == "out") {
      if (!v.is_string()) throw UsageError("config: 'out' must be a string");
      cfg.out_dir = v.get<std::string>();
    } else if (key == "csv") {
      cfg.emit_csv = json_bool(v, key);
    } else if (key == "json") {
      cfg.emit_json = json_bool(v, key);
    } else if (key == "jobs") {
      cfg.jobs = json_int(v, key);
    } else if (key == "points") {
      cfg.points = json_int(v, key);
    } else if (key == "kind") {
      if (!v.is_string()) throw UsageError("config: 'kind' must be a string");
      cfg.kinds = parse_kinds(v.get<std::string>());
      seen.kind = true;
    } else {
      throw UsageError("config file '" + path + "': unknown key '" + key + "'");
    }
  }
  return seen;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw UsageError("empty entry in integer list '" + text + "'");
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(item));
      continue;
    }
    const int lo = to_int(trim(item.substr(0, dots)));
    const int hi = to_int(trim(item.substr(dots + 2)));
    if (hi < lo) throw UsageError("empty range '" + item + "'");
    if (hi - lo > 1000) throw UsageError("range too long '" + item + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty integer list");
  sort_unique(out);
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw UsageError("empty entry in list '" + text + "'");
    out.push_back(to_double(item));
  }
  if (out.empty()) throw UsageError("empty list");
  sort_unique(out);
  return out;
}

void validate(const RunConfig& cfg) {
  if (cfg.n.empty() || cfg.gamma.empty() || cfg.k.empty()) throw UsageError("parameter lists must be non-empty");
  const bool prop21 = cfg.command == Command::verify_prop21;
  for (int n : cfg.n) {
    if (prop21 && (n < 5 || n > 16)) throw UsageError("verify prop21 needs 5 <= n <= 16, got " + std::to_string(n));
    if (!prop21 && (n < 3 || n > 32)) throw UsageError("n must lie in [3, 32], got " + std::to_string(n));
  }
  for (double g : cfg.gamma)
    if (!(g >= kGammaMin && g <= kGammaMax))
      throw UsageError("gamma must lie in [0.05, 0.95] (resonance guard), got " + format_number(g));
  for (double k : cfg.k)
    if (!(k > 0.0 && k <= 1e4)) throw UsageError("k must lie in (0, 1e4], got " + format_number(k));
  if (!(cfg.ode_tol >= 1e-12 && cfg.ode_tol <= 1e-6)) throw UsageError("ode_tol must lie in [1e-12, 1e-6]");
  if (!(cfg.quad_tol >= 1e-12 && cfg.quad_tol <= 1e-3)) throw UsageError("quad_tol must lie in [1e-12, 1e-3]");
  if (!(cfg.T >= 3.0 && cfg.T <= 12.0)) throw UsageError("matching T must lie in [3, 12]");
  if (cfg.jobs < 1 || cfg.jobs > 1024) throw UsageError("jobs must lie in [1, 1024]");
  if (cfg.points < 2 || cfg.points > 10000) throw UsageError("points must lie in [2, 10000]");
  if (cfg.kinds.empty()) throw UsageError("kind list must be non-empty");
  if (cfg.out_dir.empty()) throw UsageError("output directory must be non-empty");
}

RunConfig parse_config(const std::vector<std::string>& args, std::optional<std::string> env_out) {
  CLI::App app{"Verification lab for fractional Q-curvature and Heintze-Karcher inequalities on hyperbolic models",
               "hkcce"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string n_text, gamma_text, k_text, kind_text, out_dir, config_file;
  double ode_tol = 0, quad_tol = 0, T = 0;
  int jobs = 0, points = 0;
  bool csv = true, json = true;

  auto* o_n = app.add_option("--n", n_text, "Boundary dimensions: 4 | 4,5,6 | 5..12");
  auto* o_gamma = app.add_option("--gamma", gamma_text, "Fractional orders in [0.05, 0.95], comma separated");
  auto* o_k = app.add_option("--k", k_text, "Boundary curvature scales (Ric = (n-1) k g), comma separated");
  auto* o_ode = app.add_option("--ode-tol", ode_tol, "Relative ODE tolerance (default 1e-12)");
  auto* o_quad = app.add_option("--quad-tol", quad_tol, "Integral tolerance for verdicts (default 1e-6)");
  auto* o_T = app.add_option("--T", T, "Matching point tau = T (default 5)");
  auto* o_out = app.add_option("--out", out_dir, "Output directory (default hkcce_out)");
  auto* o_csv = app.add_flag("--csv,!--no-csv", csv, "Write CSV tables");
  auto* o_json = app.add_flag("--json,!--no-json", json, "Write JSON reports");
  auto* o_jobs = app.add_option("--jobs", jobs, "Worker threads (default: available parallelism)");
  auto* o_kind = app.add_option("--kind", kind_text, "adapted | lee | both (defect, residuals)");
  auto* o_points = app.add_option("--points", points, "Number of radii for asymptotic (default 20)");
  app.add_option("--config", config_file, "JSON config file; flags override its values");

  auto* qcurv = app.add_subcommand("qcurv", "Fractional Q-curvature from the scattering pipeline");
  auto* verify = app.add_subcommand("verify", "Inequality and identity checks");
  verify->require_subcommand(1);
  auto* v_adapted = verify->add_subcommand("hk-adapted", "Fractional Heintze-Karcher inequality, adapted metric");
  auto* v_cla = verify->add_subcommand("hk-cla", "Classical Heintze-Karcher inequality (gamma = 1/2)");
  auto* v_lee = verify->add_subcommand("hk-lee", "Heintze-Karcher inequality for the Lee compactification");
  auto* v_defect = verify->add_subcommand("defect", "Integral defect identities with their remainders");
  auto* v_prop21 = verify->add_subcommand("prop21", "Exact asymptotic expansion certificate");
  auto* residuals = app.add_subcommand("residuals", "Elliptic identity residuals on the interior window");
  auto* asymptotic = app.add_subcommand("asymptotic", "Asymptotic Heintze-Karcher ratio on the models");
  auto* sweep = app.add_subcommand("sweep", "Q-curvature and adapted inequality over a parameter grid");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    const int code = app.exit(e, os, os);
    if (code == 0) throw HelpRequested{os.str()};
    throw UsageError(os.str().empty() ? std::string(e.what()) : os.str());
  }

  RunConfig cfg;
  const std::pair<CLI::App*, Command> table[] = {
      {qcurv, Command::qcurv},           {v_adapted, Command::verify_hk_adapted}, {v_cla, Command::verify_hk_cla},
      {v_lee, Command::verify_hk_lee},   {v_defect, Command::verify_defect},      {v_prop21, Command::verify_prop21},
      {residuals, Command::residuals},   {asymptotic, Command::asymptotic},       {sweep, Command::sweep}};
  bool found = false;
  for (const auto& [sub, cmd] : table)
    if (sub->parsed()) {
      cfg.command = cmd;
      found = true;
    }
  if (!found) throw UsageError("missing command");

  cfg.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  Explicit seen;
  if (!config_file.empty()) {
    seen = apply_config_file(cfg, config_file);
    cfg.config_file = config_file;
  }
  if (env_out && !env_out->empty()) cfg.out_dir = *env_out;

  if (o_n->count()) {
    cfg.n = parse_int_list(n_text);
    seen.n = true;
  }
  if (o_gamma->count()) {
    cfg.gamma = parse_double_list(gamma_text);
    seen.gamma = true;
  }
  if (o_k->count()) {
    cfg.k = parse_double_list(k_text);
    seen.k = true;
  }
  if (o_ode->count()) cfg.ode_tol = ode_tol;
  if (o_quad->count()) cfg.quad_tol = quad_tol;
  if (o_T->count()) cfg.T = T;
  if (o_out->count()) cfg.out_dir = out_dir;
  if (o_csv->count()) cfg.emit_csv = csv;
  if (o_json->count()) cfg.emit_json = json;
  if (o_jobs->count()) cfg.jobs = jobs;
  if (o_kind->count()) {
    cfg.kinds = parse_kinds(kind_text);
    seen.kind = true;
  }
  if (o_points->count()) cfg.points = points;

  // Command-specific defaults for lists that were not given.
  if (cfg.command == Command::verify_prop21 && !seen.n) cfg.n = parse_int_list("5..12");
  if (cfg.command == Command::residuals && !seen.kind) cfg.kinds = {CompactKind::adapted, CompactKind::lee};
  if (cfg.command == Command::sweep) {
    if (!seen.n) cfg.n = {4, 5, 6};
    if (!seen.gamma) cfg.gamma = {0.25, 0.4, 0.5, 0.6, 0.75};
    if (!seen.k) cfg.k = {0.5, 1.0, 2.0};
  }
  if (cfg.command == Command::verify_hk_cla) {
    if (seen.gamma && cfg.gamma != std::vector<double>{0.5}) throw UsageError("verify hk-cla runs at gamma = 0.5 only");
    cfg.gamma = {0.5};
  }
  validate(cfg);
  return cfg;
}

}  // namespace hkcce
