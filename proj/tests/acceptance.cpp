// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hkcce/compactification.hpp"
#include "hkcce/format.hpp"
#include "hkcce/hk_verifier.hpp"
#include "hkcce/jet_algebra.hpp"
#include "hkcce/model_geometry.hpp"
#include "hkcce/scattering.hpp"
#include "hkcce/special_fn.hpp"

using namespace hkcce;
using jets::Rational;

namespace {

const std::vector<int> kN = {4, 5, 6};
const std::vector<double> kGammas = {0.25, 0.4, 0.5, 0.6, 0.75};
const std::vector<double> kK = {0.5, 1.0, 2.0};

struct Outcome {
  bool pass = true;
  std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome oracle_grid() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int n : kN)
    for (double g : kGammas)
      for (double k : kK) {
        const QCurvParams p = QCurvParams::make(n, g, k);
        worst = std::max(worst, rel(q_curvature(p).q_value, sphere_q_oracle(p)));
      }
  const double secs = seconds_since(t0);
  return {worst <= 1e-6 && secs <= 60.0,
          "45 cases, max rel err " + format_number(worst) + ", " + format_number(secs) + " s"};
}

Outcome prop21() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (int n = 5; n <= 12; ++n) {
    const jets::Prop21Certificate c = jets::verify_prop21(n);
    const Rational expected(1, static_cast<long>(n) * (n - 2) * (n - 2) * (n - 2));
    ok = ok && c.all_pass() && c.beta.int_E2() == expected && c.alpha1 == c.beta1;
  }
  const double secs = seconds_since(t0);
  return {ok && secs <= 5.0, "n = 5..12, " + format_number(secs) + " s"};
}

Outcome rigidity() {
  double worst = 0.0;
  bool ok = true;
  for (int n : kN)
    for (double k : {0.5, 1.0, 2.0, 4.0}) {
      for (const VerificationReport& r : {verify_cla(n, k), verify_lee(n, k)}) {
        worst = std::max(worst, std::abs(r.gap) / r.lhs);
        ok = ok && r.pass;
      }
    }
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const VerificationReport cla = verify_cla(4, 1.0), lee = verify_lee(4, 1.0);
  const bool values = rel(cla.lhs, 2 * pi2 / 3) <= 1e-6 && rel(cla.rhs, 2 * pi2 / 3) <= 1e-6 &&
                      rel(lee.lhs, 4 * pi2 / 3) <= 1e-6 && rel(lee.rhs, 4 * pi2 / 3) <= 1e-6;
  return {ok && worst <= 1e-6 && values, "24 cases, max |gap|/lhs " + format_number(worst)};
}

Outcome strictness() {
  double least = INFINITY;
  for (int n : kN)
    for (double g : {0.25, 0.75})
      for (double k : kK) {
        const VerificationReport r = verify_adapted(n, g, k);
        least = std::min(least, r.verdict == Verdict::strict ? r.gap / r.lhs : -INFINITY);
      }
  return {least > 1e-3, "18 cases, min gap/lhs " + format_number(least)};
}

Outcome residuals() {
  double adapted = 0.0, lee = 0.0;
  for (int n : kN)
    for (double k : kK) {
      const ModelSpace m(n, k);
      for (double g : kGammas) {
        const ResidualSuite s = residual_suite(build_adapted(m, g, ScatteringOptions{}));
        adapted = std::max({adapted, s.rho.sup, s.W.sup});
      }
      const ResidualSuite s = residual_suite(build_lee(m));
      lee = std::max({lee, s.rho.sup, s.W.sup});
    }
  return {adapted <= 1e-5 && lee <= 1e-8,
          "adapted " + format_number(adapted) + ", lee " + format_number(lee)};
}

Outcome defects() {
  double balance = 0.0, least = INFINITY, rigid = 0.0;
  bool ok = true;
  auto absorb = [&](const VerificationReport& r, bool is_rigid) {
    balance = std::max(balance, std::abs(r.gap) / std::abs(r.lhs));
    for (const NamedValue& v : r.remainders) {
      least = std::min(least, v.value);
      if (is_rigid) rigid = std::max(rigid, std::abs(v.value));
    }
    ok = ok && r.pass;
  };
  for (int n : kN)
    for (double k : kK) {
      for (double g : kGammas) absorb(defect_identity(CompactKind::adapted, n, g, k), g == 0.5);
      absorb(defect_identity(CompactKind::lee, n, 0.5, k), true);
    }
  return {ok && balance <= 1e-5 && least >= -1e-9 && rigid <= 1e-7,
          "balance " + format_number(balance) + ", min remainder " + format_number(least) +
              ", rigid remainders " + format_number(rigid)};
}

Outcome asymptotics() {
  double worst = 0.0;
  for (int n : kN)
    for (double k : {0.5, 1.0, 2.0, 4.0}) {
      const std::vector<double> radii = asymptotic_radii(k, 20);
      for (const AsymptoticRow& row : asymptotic_ratio(n, k, radii)) worst = std::max(worst, row.abs_err);
    }
  return {worst <= 1e-8, "20 radii x 12 models, max |ratio - 1| " + format_number(worst)};
}

Outcome frobenius_exact() {
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<int> n_dist(3, 16), den(2, 40), k_num(1, 50), k_den(1, 30);
  int ok = 0;
  for (int i = 0; i < 20; ++i) {
    const int n = n_dist(rng);
    const int q = den(rng);
    const int p = std::uniform_int_distribution<int>(1, q - 1)(rng);
    const Rational g(p, q), k(k_num(rng), k_den(rng));
    const std::vector<Rational> a = frobenius_dirichlet_exact(n, g, k, 2);
    const Rational jhat = Rational(n) * k / 2;
    if (a.size() >= 2 && a[1] == (Rational(n) - 2 * g) * jhat / (8 * (1 - g))) ++ok;
  }
  return {ok == 20, std::to_string(ok) + "/20 triples"};
}

Outcome positivity() {
  double min_q = INFINITY, min_t = INFINITY, min_j = INFINITY;
  for (int n : kN)
    for (double k : kK) {
      const ModelSpace m(n, k);
      for (double g : kGammas) {
        const CompactifiedGeometry geo = build_adapted(m, g, ScatteringOptions{});
        min_q = std::min(min_q, geo.q_value);
        min_t = std::min(min_t, residual_suite(geo).min_W);
      }
      min_j = std::min(min_j, residual_suite(build_lee(m)).min_W);
    }
  return {min_q > 0 && min_t > 0 && min_j > 0,
          "min Q " + format_number(min_q) + ", min T " + format_number(min_t) + ", min J " + format_number(min_j)};
}

Outcome scaling() {
  double worst = 0.0;
  for (int n : kN)
    for (double g : kGammas) {
      const double q1 = q_curvature(QCurvParams::make(n, g, 1.0)).q_value;
      for (double k : {0.5, 2.0, 4.0}) {
        const double qk = q_curvature(QCurvParams::make(n, g, k)).q_value;
        worst = std::max(worst, rel(qk / q1, std::pow(k, g)));
      }
    }
  return {worst <= 2e-6, "max rel err " + format_number(worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Q oracle grid", oracle_grid},
      {"exact asymptotic certificate", prop21},
      {"equality cases", rigidity},
      {"strictness away from gamma = 1/2", strictness},
      {"elliptic residuals", residuals},
      {"defect identities", defects},
      {"asymptotic ratio", asymptotics},
      {"exact Frobenius u2", frobenius_exact},
      {"positivity", positivity},
      {"scaling covariance", scaling},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
