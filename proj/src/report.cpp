#include "hkcce/report.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <system_error>

#include <unistd.h>

#include "hkcce/format.hpp"

namespace hkcce {

namespace fs = std::filesystem;

void write_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

nlohmann::json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  const std::string s = format_number(x);
  double v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

namespace {

nlohmann::json named_values(const std::vector<NamedValue>& values) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : values)
    arr.push_back({{"name", v.name}, {"value", json_number(v.value)}, {"err_est", json_number(v.err_est)}});
  return arr;
}

}  // namespace

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json params = {{"n", r.n},
                           {"gamma", json_number(r.gamma)},
                           {"k", json_number(r.k)},
                           {"ode_tol", json_number(r.ode_tol)},
                           {"quad_tol", json_number(r.quad_tol)},
                           {"T", json_number(r.match_T)},
                           {"quad_nodes", r.quad_nodes}};
  return {{"name", r.name},
          {"params", params},
          {"lhs", json_number(r.lhs)},
          {"rhs", json_number(r.rhs)},
          {"gap", json_number(r.gap)},
          {"err_est", json_number(r.err_est)},
          {"remainders", named_values(r.remainders)},
          {"diagnostics", named_values(r.diagnostics)},
          {"scaling_exponent", json_number(r.scaling_exponent)},
          {"verdict", to_string(r.verdict)},
          {"expected", to_string(r.expected)},
          {"pass", r.pass},
          {"message", r.message}};
}

nlohmann::json to_json(const ScatteringResult& r, double oracle) {
  return {{"name", "qcurv"},
          {"params", {{"n", r.params.n}, {"gamma", json_number(r.params.gamma)}, {"k", json_number(r.params.k)},
                      {"T", json_number(r.T)}, {"T_prime", json_number(r.T_prime)}}},
          {"Q_num", json_number(r.q_value)},
          {"Q_oracle", json_number(oracle)},
          {"rel_err", json_number(std::abs(r.q_value - oracle) / std::abs(oracle))},
          {"scattering_value", json_number(r.scattering_value)},
          {"c1", json_number(static_cast<double>(r.c1))},
          {"c2", json_number(static_cast<double>(r.c2))},
          {"condition_estimate", json_number(r.condition_estimate)},
          {"consistency_gap", json_number(r.consistency_gap)},
          {"truncation_estimate", json_number(r.truncation_estimate)}};
}

nlohmann::json to_json(const ResidualSuite& s, int n, double gamma, double k) {
  return {{"name", "residuals-" + to_string(s.kind)},
          {"params", {{"n", n}, {"gamma", json_number(gamma)}, {"k", json_number(k)}}},
          {s.rho.name, json_number(s.rho.sup)},
          {s.W.name, json_number(s.W.sup)},
          {s.J_crosscheck.name, json_number(s.J_crosscheck.sup)},
          {"min_W", json_number(s.min_W)},
          {"max_trace_mismatch", json_number(s.max_trace_mismatch)},
          {"boundary_W_extrapolated", json_number(s.boundary_W_extrapolated)},
          {"boundary_W_expected", json_number(s.boundary_W_expected)},
          {"boundary_rel_err", json_number(s.boundary_rel_err)}};
}

nlohmann::json to_json(const jets::IntegralClass& c) {
  return {{"vol", jets::to_string(c.vol())},
          {"int_J", jets::to_string(c.int_J())},
          {"int_J2", jets::to_string(c.int_J2())},
          {"int_E2", jets::to_string(c.int_E2())},
          {"expression", c.to_string()}};
}

nlohmann::json to_json(const jets::Prop21Certificate& c) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& chk : c.checks)
    checks.push_back({{"name", chk.name}, {"pass", chk.pass}, {"lhs", chk.lhs}, {"rhs", chk.rhs}});
  const jets::Rational expected(1, static_cast<long>(c.n) * (c.n - 2) * (c.n - 2) * (c.n - 2));
  return {{"name", "prop21"},
          {"params", {{"n", c.n}}},
          {"alpha", c.alpha.to_string()},
          {"alpha1", to_json(c.alpha1)},
          {"alpha2", to_json(c.alpha2)},
          {"beta1", to_json(c.beta1)},
          {"beta2", to_json(c.beta2)},
          {"beta", to_json(c.beta)},
          {"beta_E2_coefficient", jets::to_string(c.beta.int_E2())},
          {"beta_E2_expected", jets::to_string(expected)},
          {"alpha1_equals_beta1", c.alpha1 == c.beta1},
          {"checks", checks},
          {"verdict", c.all_pass() ? "equality" : "fail"},
          {"pass", c.all_pass()}};
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw std::logic_error("CsvTable: row width does not match the header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

std::string cell(double x) { return format_number(x); }
std::string cell(int x) { return std::to_string(x); }

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace hkcce
