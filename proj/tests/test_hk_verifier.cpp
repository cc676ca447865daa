#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hkcce/hk_verifier.hpp"
#include "hkcce/special_fn.hpp"

using namespace hkcce;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("verdict classification") {
  CHECK(classify(10.0, 1e-6, 0.0, 1e-6) == Verdict::equality);
  CHECK(classify(10.0, 1e-3, 0.0, 1e-6) == Verdict::strict);
  CHECK(classify(10.0, -1e-3, 0.0, 1e-6) == Verdict::fail);
  CHECK(classify(10.0, 5e-5, 0.0, 1e-6) == Verdict::inconclusive);
  CHECK(classify(10.0, 1e-3, 1.0, 1e-6) == Verdict::inconclusive);
  CHECK(to_string(Verdict::strict) == "strict");
}

TEST_CASE("classical Heintze-Karcher: equality on the models") {
  const VerificationReport r = verify_cla(4, 1.0);
  CHECK(r.lhs == Approx(2.0 * pi * pi / 3.0).epsilon(1e-6));
  CHECK(r.rhs == Approx(2.0 * pi * pi / 3.0).epsilon(1e-6));
  CHECK(r.verdict == Verdict::equality);
  CHECK(r.pass);
  const VerificationReport r5 = verify_cla(5, 1.0);
  CHECK(r5.lhs == Approx(std::pow(pi, 3) / 5.0).epsilon(1e-6));
  CHECK(r5.rhs == Approx(std::pow(pi, 3) / 5.0).epsilon(1e-6));
  const VerificationReport r44 = verify_cla(4, 4.0);
  CHECK(r44.verdict == Verdict::equality);
  CHECK(r44.diagnostic("H_bar_expected") == Approx(8.0).epsilon(1e-8));
  CHECK(r44.diagnostic("H_bar_extrapolated") == Approx(8.0).epsilon(1e-8));
}

TEST_CASE("Lee Heintze-Karcher: equality on the models") {
  const VerificationReport r = verify_lee(4, 1.0);
  CHECK(r.lhs == Approx(4.0 * pi * pi / 3.0).epsilon(1e-6));
  CHECK(r.rhs == Approx(4.0 * pi * pi / 3.0).epsilon(1e-6));
  CHECK(r.verdict == Verdict::equality);
  const VerificationReport r5 = verify_lee(5, 1.0);
  CHECK(r5.rhs == Approx(2.0 * std::pow(pi, 3) / 5.0).epsilon(1e-6));
  const VerificationReport r42 = verify_lee(4, 2.0);
  CHECK(r42.lhs == Approx(std::pow(2.0, -2.0) * unit_sphere_volume(4) / 4.0).epsilon(1e-12));
  CHECK(r42.verdict == Verdict::equality);
  CHECK(std::isnan(r42.gamma));
}

TEST_CASE("fractional inequality: equality at 1/2, strict otherwise") {
  const VerificationReport half = verify_adapted(4, 0.5, 1.0);
  CHECK(half.lhs == Approx(8.0 * pi * pi / 3.0).epsilon(1e-6));
  CHECK(half.rhs == Approx(8.0 * pi * pi / 3.0).epsilon(1e-6));
  CHECK(half.verdict == Verdict::equality);
  CHECK(half.diagnostic("C") == Approx(5.0));

  const VerificationReport q = verify_adapted(4, 0.25, 1.0);
  CHECK(q.verdict == Verdict::strict);
  CHECK(q.gap > 1e-3 * q.lhs);
  CHECK(q.expected == Verdict::strict);
  CHECK(q.pass);
  // The gap is the sum of the rescaled remainders.
  CHECK(q.gap == Approx(q.remainder("R1_tracefree_hessian") + q.remainder("R2_gradient_T")).epsilon(1e-8));
}

TEST_CASE("scaling under k") {
  const VerificationReport a = verify_adapted(4, 0.75, 1.0);
  const VerificationReport b = verify_adapted(4, 0.75, 2.0);
  CHECK(b.verdict == Verdict::strict);
  const double w = std::pow(2.0, b.scaling_exponent);
  CHECK(b.scaling_exponent == Approx(-2.25));
  CHECK(b.lhs / a.lhs == Approx(w).epsilon(1e-8));
  CHECK(b.rhs / a.rhs == Approx(w).epsilon(1e-8));
  CHECK(b.gap / a.gap == Approx(w).epsilon(1e-6));

  const VerificationReport c1 = verify_cla(5, 1.0), c2 = verify_cla(5, 2.0);
  CHECK(c2.rhs / c1.rhs == Approx(std::pow(2.0, c1.scaling_exponent)).epsilon(1e-8));
  const VerificationReport l1 = verify_lee(6, 1.0), l2 = verify_lee(6, 2.0);
  CHECK(l2.rhs / l1.rhs == Approx(std::pow(2.0, l1.scaling_exponent)).epsilon(1e-10));
}

TEST_CASE("defect identities") {
  const VerificationReport lee = defect_identity(CompactKind::lee, 4, 0.5, 1.0);
  CHECK(lee.verdict == Verdict::equality);
  CHECK(std::abs(lee.gap) <= 1e-8 * lee.lhs);
  for (const auto& r : lee.remainders) CHECK(std::abs(r.value) <= 1e-8);

  const VerificationReport half = defect_identity(CompactKind::adapted, 4, 0.5, 1.0);
  CHECK(half.verdict == Verdict::equality);
  CHECK(std::abs(half.gap) <= 1e-6 * half.lhs);
  for (const auto& r : half.remainders) CHECK(std::abs(r.value) <= 1e-7);

  const VerificationReport q = defect_identity(CompactKind::adapted, 4, 0.25, 1.0);
  CHECK(q.verdict == Verdict::equality);
  CHECK(std::abs(q.gap) <= 1e-5 * q.lhs);
  for (const auto& r : q.remainders) CHECK(r.value > 1e-3);
  CHECK(q.pass);
}

TEST_CASE("refinement changes integrals by at most the error estimate") {
  VerifyOptions fine;
  fine.quad_order = 32;
  for (double g : {0.25, 0.5}) {
    const VerificationReport a = verify_adapted(5, g, 1.0);
    const VerificationReport b = verify_adapted(5, g, 1.0, fine);
    CHECK(std::abs(b.rhs - a.rhs) <= a.err_est);
  }
  const VerificationReport a = verify_lee(5, 2.0);
  const VerificationReport b = verify_lee(5, 2.0, fine);
  CHECK(std::abs(b.rhs - a.rhs) <= a.err_est);
  VerifyOptions odd;
  odd.quad_order = 7;
  CHECK_THROWS_AS(verify_lee(5, 2.0, odd), DomainError);
}

TEST_CASE("an unattainable tolerance is reported as inconclusive") {
  VerifyOptions tight;
  tight.quad_tol = 1e-16;
  const VerificationReport r = verify_cla(4, 1.0, tight);
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK_FALSE(r.pass);
}

TEST_CASE("asymptotic Heintze-Karcher ratio") {
  const double r1[] = {0.3};
  CHECK(asymptotic_ratio(5, 1.0, r1)[0].ratio == Approx(1.0).epsilon(1e-8));
  const double r2[] = {0.1};
  CHECK(asymptotic_ratio(7, 2.0, r2)[0].ratio == Approx(1.0).epsilon(1e-8));
  const auto radii = asymptotic_radii(2.0);
  REQUIRE(radii.size() == 20);
  CHECK(radii.front() == Approx(0.5 / std::sqrt(2.0)));
  CHECK(radii.back() == Approx(0.5e-4 / std::sqrt(2.0)));
  for (const auto& row : asymptotic_ratio(6, 2.0, radii)) CHECK(row.abs_err < 1e-8);
  const double bad[] = {3.0};
  CHECK_THROWS_AS(asymptotic_ratio(4, 1.0, bad), DomainError);
}
