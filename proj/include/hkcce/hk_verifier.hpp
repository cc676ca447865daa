#pragma once

#include <span>
#include <string>
#include <vector>

#include "hkcce/compactification.hpp"
#include "hkcce/scattering.hpp"

namespace hkcce {

enum class Verdict { equality, strict, fail, inconclusive };

std::string to_string(Verdict v);

struct NamedValue {
  std::string name;
  double value = 0.0;
  double err_est = 0.0;
};

struct VerificationReport {
  std::string name;
  int n = 0;
  double gamma = 0.0;  // NaN for the Lee checks
  double k = 1.0;
  double ode_tol = 0.0;
  double quad_tol = 0.0;
  double match_T = 0.0;
  int quad_nodes = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double err_est = 0.0;
  std::vector<NamedValue> remainders;
  std::vector<NamedValue> diagnostics;
  /// lhs and rhs scale like k^scaling_exponent under g-hat -> g-hat / k.
  double scaling_exponent = 0.0;
  Verdict verdict = Verdict::inconclusive;
  Verdict expected = Verdict::equality;
  bool pass = false;
  std::string message;

  double diagnostic(const std::string& key) const;
  double remainder(const std::string& key) const;
};

struct VerifyOptions {
  double ode_tol = 1e-12;
  double quad_tol = 1e-6;
  double T = kDefaultMatchT;
  int order = kDefaultFrobeniusOrder;
  /// Gauss-Legendre points per panel; the error estimate uses half as many.
  int quad_order = 16;
};

/// Classifies gap = lhs - rhs against tol * max(|lhs|, 1).
Verdict classify(double lhs, double gap, double err_est, double tol);

VerificationReport verify_adapted(int n, double gamma, double k, const VerifyOptions& opts = {});
VerificationReport verify_cla(int n, double k, const VerifyOptions& opts = {});
VerificationReport verify_lee(int n, double k, const VerifyOptions& opts = {});
VerificationReport defect_identity(CompactKind kind, int n, double gamma, double k, const VerifyOptions& opts = {});

struct AsymptoticRow {
  int n = 0;
  double k = 1.0;
  double r = 0.0;
  double ratio = 0.0;
  double abs_err = 0.0;
};

/// [int_{r} V/H_r dS] / [(n+1)/n int_{X_r} V dV] for V = f' on the model.
std::vector<AsymptoticRow> asymptotic_ratio(int n, double k, std::span<const double> r_values);

/// `count` log-spaced radii from 0.5/sqrt(k) down to 0.5e-4/sqrt(k).
std::vector<double> asymptotic_radii(double k, int count = 20);

}  // namespace hkcce
