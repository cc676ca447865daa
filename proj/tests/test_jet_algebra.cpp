#include <doctest.h>

#include "hkcce/jet_algebra.hpp"

using namespace hkcce::jets;

namespace {
const Poly J = Poly::symbol(Symbol::J);
const Poly A2 = Poly::symbol(Symbol::A2);
const Poly E2 = Poly::symbol(Symbol::E2);
const Poly LapJ = Poly::symbol(Symbol::LapJ);
}  // namespace

TEST_CASE("rationals serialize as p/q") {
  CHECK(to_string(Rational(1, 135)) == "1/135");
  CHECK(to_string(Rational(3)) == "3/1");
  CHECK(to_string(Rational(-2, 6)) == "-1/3");
  CHECK(parse_rational("-1/3") == Rational(-1, 3));
  CHECK(parse_rational("7") == Rational(7));
}

TEST_CASE("polynomial arithmetic") {
  const Poly p = J + A2 * Rational(1, 2);
  const Poly sq = p * p;
  CHECK(sq.coeff(Monomial{2, 0, 0, 0}) == Rational(1));
  CHECK(sq.coeff(Monomial{1, 1, 0, 0}) == Rational(1));
  CHECK(sq.coeff(Monomial{0, 2, 0, 0}) == Rational(1, 4));
  CHECK((p - p).is_zero());
  CHECK(p.substitute(Symbol::A2, J) == J * Rational(3, 2));
  CHECK(sq.evaluate({Rational(1), Rational(2), Rational(0), Rational(0)}) == Rational(4));
}

TEST_CASE("jet inverse, exp and log are consistent") {
  Jet a(6);
  a[0] = Poly(1);
  a[1] = J;
  a[2] = A2;
  a[3] = E2 * Rational(1, 3);
  CHECK(a * a.inverse() == [] {
    Jet one(6);
    one[0] = Poly(1);
    return one;
  }());
  CHECK(a.log().exp() == a);
  Jet b(4);
  b[0] = Poly(2);
  CHECK_THROWS_AS(b.inverse(), JetError);
  CHECK_THROWS_AS(Jet(10), JetError);
}

TEST_CASE("Euler operator scales coefficients by 2j") {
  Jet a(4);
  a[0] = Poly(5);
  a[1] = J;
  a[2] = A2;
  const Jet e = a.euler();
  CHECK(e[0].is_zero());
  CHECK(e[1] == J * Rational(2));
  CHECK(e[2] == A2 * Rational(4));
}

TEST_CASE("boundary integration rules") {
  // A bare Lap J integrates to zero; |A|^2 splits into E2 and J^2 channels.
  const IntegralClass c = boundary_integral(LapJ + A2, 5);
  CHECK(c.int_E2() == Rational(1, 9));
  CHECK(c.int_J2() == Rational(1, 5));
  CHECK_THROWS_AS(boundary_integral(LapJ * J, 5), UnsupportedIntegralIdentity);
}

TEST_CASE("normal-form jets from traces match their closed forms") {
  for (int n : {5, 6, 9}) {
    const NormalFormJets a = expand_normal_form(n);
    const NormalFormJets b = closed_form_normal_form(n);
    CHECK(a.det_jet == b.det_jet);
    CHECK(a.h_jet == b.h_jet);
  }
}

TEST_CASE("Lee v4 vanishes on round-sphere data") {
  const int n = 6;
  const Rational Jv(n, 2), A2v(n, 4);
  CHECK(lee_v4(n).evaluate({Jv, A2v, Rational(0), Rational(0)}) == Rational(0));
}

TEST_CASE("asymptotic expansion certificate") {
  for (int n = 5; n <= 8; ++n) {
    const Prop21Certificate cert = verify_prop21(n);
    CHECK(cert.all_pass());
    CHECK(cert.alpha1 == cert.beta1);
    const long d = static_cast<long>(n) * (n - 2) * (n - 2) * (n - 2);
    CHECK(cert.beta.int_E2() == Rational(1, d));
    CHECK(cert.beta.int_J2() == Rational(0));
  }
  CHECK(verify_prop21(5).beta.int_E2() == Rational(1, 135));
}

TEST_CASE("jet_combine dispatch") {
  Jet a(4), b(4);
  a[0] = Poly(1);
  a[1] = J;
  b[0] = Poly(3);
  CHECK(jet_combine(a, b, JetOp::Add)[0] == Poly(4));
  CHECK(jet_combine(a, b, JetOp::Mul)[1] == J * Rational(3));
  CHECK(jet_combine(a, b, JetOp::Scale)[1] == J * Rational(3));
  CHECK(jet_combine(a, b, JetOp::InvertUnitLeading)[1] == J * Rational(-1));
}
