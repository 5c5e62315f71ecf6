#include <doctest.h>

#include <cmath>
#include <random>

#include "pvosc/algebraic.hpp"
#include "support/fixtures.hpp"

using namespace pvosc;

namespace {

ErrorKind kind_of(const IntPolynomial& poly) {
  try {
    pisot_from_minpoly(poly);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected rejection of " << to_string(poly));
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("pisot validation accepts known Pisot numbers") {
  const auto three = pisot_from_minpoly({-3, 1});
  CHECK(three->degree() == 1);
  CHECK(three->root_interval().contains(Rational(3)));

  const auto silver = pisot_from_minpoly({-1, -2, 1});
  const RealInterval& r = silver->root_interval();
  // 1 + sqrt 2 lies in [lo, hi] iff (lo-1)^2 <= 2 <= (hi-1)^2
  CHECK((r.lo - 1) * (r.lo - 1) <= 2);
  CHECK((r.hi - 1) * (r.hi - 1) >= 2);
  CHECK(r.width() <= Rational(1, 1) / Rational(Integer(1) << 80));
  CHECK(silver->conjugate_moduli_bound() < 1);

  for (IntPolynomial p : {IntPolynomial{-1, -1, 1}, IntPolynomial{-1, -1, 0, 1}, IntPolynomial{-1, 0, -1, 1},
                          IntPolynomial{-1, -1, -1, 1}, IntPolynomial{1, -3, 1}}) {
    CHECK_NOTHROW(pisot_from_minpoly(p));
  }
}

TEST_CASE("pisot validation strips powers of x") {
  const auto f = pisot_from_minpoly({0, 0, -1, -1, 1});
  CHECK(f->minpoly() == IntPolynomial({-1, -1, 1}));
}

TEST_CASE("pisot validation rejections") {
  CHECK(kind_of({-3, 2}) == ErrorKind::NotMonic);
  CHECK(kind_of({-2, 0, 1}) == ErrorKind::NotPisot);          // sqrt 2 and its conjugate -sqrt 2
  CHECK(kind_of({-1, 1}) == ErrorKind::NotPisot);             // eta = 1
  CHECK(kind_of({1, -1, 1}) == ErrorKind::NotPisot);          // complex roots on the unit circle
  CHECK(kind_of({1, -1, -1, -1, 1}) == ErrorKind::NotPisot);  // Salem number, conjugates on the circle
  CHECK(kind_of({-2, 0, 0, 1}) == ErrorKind::NotPisot);       // cube root of 2
  CHECK(kind_of({-1, -1, 1, 1}) == ErrorKind::NotPisot);      // (x-1)(x+1)^2
  CHECK(kind_of({1, 0, -4, 0, 1}) == ErrorKind::NotPisot);    // roots +-1.93, +-0.52
  CHECK(kind_of({1, -2, -2, 1}) == ErrorKind::NotPisot);      // (x+1)(x^2-3x+1)
}

TEST_CASE("field arithmetic in Z[1+sqrt2]") {
  const Field f = fx::silver();
  const FieldElement eta = FieldElement::eta(f);
  CHECK(eta * eta == fx::el(f, {1, 2}));
  CHECK(eta.inverse() == fx::el(f, {-2, 1}));
  CHECK(eta_power(f, -1) == fx::el(f, {-2, 1}));
  CHECK(eta_power(f, 3) == fx::el(f, {2, 5}));
  CHECK(eta_power(f, 0) == fx::el(f, {1}));
  CHECK_THROWS_AS(FieldElement(f).inverse(), Error);

  const Field g = fx::eta3();
  CHECK(eta_power(g, 3) == fx::el(g, {27}));
  CHECK(eta_power(g, -2) == FieldElement(g, Rational(1, 9)));
}

TEST_CASE("exact signs") {
  const Field f = fx::silver();
  // d = 5 + 10 eta = 15 + 10 sqrt2 against 72 and 45
  CHECK(sign(fx::el(f, {5, 10}) - fx::el(f, {72})) < 0);
  CHECK(sign(fx::el(f, {5, 10}) - fx::el(f, {29})) > 0);
  // eta^2 - 2 eta - 1 is zero after reduction
  CHECK(sign(fx::el(f, {-1, -2}) + eta_power(f, 2)) == 0);
  // eta^-8 = 577 - 408 sqrt2 ~ 8.7e-4
  CHECK(eta_power(f, -8) == fx::el(f, {985, -408}));
  CHECK(sign(fx::el(f, {985, -408})) > 0);
  CHECK(sign(fx::el(f, {-985, 408})) < 0);
  CHECK(compare(fx::el(f, {985, -408}), fx::el(f, {0})) == 1);
}

TEST_CASE("compare_abs and the strict variant") {
  const Field g = fx::eta3();
  const FieldElement b72 = fx::el(g, {72});
  CHECK(compare_abs(fx::el(g, {72}), b72) == AbsOrder::LessOrEqual);
  CHECK(compare_abs_strict(fx::el(g, {72}), b72) == StrictAbsOrder::GreaterOrEqual);
  CHECK(compare_abs(fx::el(g, {-6}), fx::el(g, {27})) == AbsOrder::LessOrEqual);
  CHECK(compare_abs(fx::el(g, {54}), fx::el(g, {27})) == AbsOrder::Greater);
  CHECK(compare_abs(fx::el(g, {-73}), b72) == AbsOrder::Greater);
  CHECK_THROWS_AS(compare_abs(fx::el(g, {1}), fx::el(g, {0})), Error);
  try {
    compare_abs(fx::el(g, {1}), fx::el(g, {-5}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonpositiveBound);
  }
}

TEST_CASE("garsia bound values") {
  CHECK(garsia_lower_bound(*fx::eta3(), Rational(7)) == 1);
  const Rational g10 = garsia_lower_bound(*fx::silver(), Rational(10));
  CHECK(g10 > 0);
  CHECK(g10 <= Rational(586, 10000));
  // (2 - sqrt2)/10 = 0.05857...; the bound may only lose a little
  CHECK(g10 >= Rational(585, 10000));
}

TEST_CASE("garsia bound on random height-10 polynomials at 1+sqrt2") {
  const Field f = fx::silver();
  const Rational g10 = garsia_lower_bound(*f, Rational(10));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coef(-10, 10);
  for (int k = 0; k < 300; ++k) {
    FieldElement acc(f);
    const FieldElement eta = FieldElement::eta(f);
    for (int i = 0; i < 7; ++i) acc = acc * eta + FieldElement(f, Rational(coef(rng)));
    if (acc.is_zero()) continue;
    const int s = sign(acc);
    CHECK(compare_abs_strict(acc, FieldElement(f, g10)) == StrictAbsOrder::GreaterOrEqual);
    CHECK(s != 0);
  }
}

TEST_CASE("text form round trip") {
  const Field f = fx::silver();
  for (const FieldElement& a : {fx::el(f, {5, 10}), fx::el(f, {-12, -8}), FieldElement(f, {Rational(-3, 7), Rational(5, 2)}),
                                FieldElement(f), fx::el(f, {0, -1})}) {
    const std::string text = to_string(a);
    CHECK(parse_field_element(f, text) == a);
    CHECK(to_string(parse_field_element(f, text)) == text);
  }
  CHECK(parse_field_element(f, "1 + 2*eta") == fx::el(f, {1, 2}));
  CHECK(parse_field_element(f, "eta^2") == fx::el(f, {1, 2}));
  CHECK_THROWS_AS(parse_field_element(f, "1 + eta^x"), Error);
  CHECK_THROWS_AS(parse_rational("2/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK(parse_rational("-22/4") == Rational(-11, 2));
}

TEST_CASE("enclosures tighten with more bits") {
  const Field f = fx::silver();
  const FieldElement a = fx::el(f, {985, -408});
  const RealInterval coarse = enclose(a, 0);
  const RealInterval fine = enclose(a, 200);
  CHECK(fine.width() <= coarse.width());
  CHECK(fine.lo > 0);
  CHECK(to_double(fx::el(f, {5, 10})) == doctest::Approx(15 + 10 * std::sqrt(2.0)).epsilon(1e-12));
}
