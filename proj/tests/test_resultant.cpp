#include "doctest.h"

#include "eisenprod/errors.hpp"
#include "eisenprod/resultant.hpp"
#include "eisenprod/univariate.hpp"
#include "properties.hpp"
#include "support.hpp"

namespace ep = eisenprod;

TEST_CASE("resultant sign convention") {
  auto reg = ep::make_registry({"x"});
  const ep::Poly p = ep::parse_poly(reg, "x^2 - 2"), q = ep::parse_poly(reg, "x - 1");
  // p_m^n prod q(roots of p) = (sqrt2 - 1)(-sqrt2 - 1)
  CHECK(ep::resultant(p, q, 0) == ep::Poly::constant(reg, -1));
  // (-1)^(mn) on swapping
  CHECK(ep::resultant(q, p, 0) == ep::Poly::constant(reg, -1));
  const ep::Poly c = ep::parse_poly(reg, "x^3 + 1");
  CHECK(ep::resultant(p, c, 0) == ep::resultant(c, p, 0));
  CHECK(ep::resultant(q, c, 0) == -ep::resultant(c, q, 0));
}

TEST_CASE("resultant preconditions") {
  auto reg = ep::make_registry({"x", "y"});
  CHECK_THROWS_AS(ep::resultant(ep::parse_poly(reg, "y"), ep::parse_poly(reg, "y + 1"), 0), ep::DomainError);
  CHECK_THROWS_AS(ep::resultant(ep::Poly(reg), ep::parse_poly(reg, "x"), 0), ep::DomainError);
}

TEST_CASE("worked bivariate resultant") {
  auto reg = ep::make_registry({"x", "y"});
  const ep::Poly f = ep::parse_poly(reg, "3*x^2*y + 2*y^2 + 2");
  const ep::Poly g = ep::parse_poly(reg, "x^3 + 4*x^2*y + y^3 + 1");
  const ep::Poly want =
      ep::parse_poly(reg, "-27*x^9 - 48*x^7 + 53*x^6 + 36*x^5 + 80*x^4 + 16*x^3 - 28*x^2 + 16");
  for (auto m : {ep::ResultantMethod::kAuto, ep::ResultantMethod::kBareiss, ep::ResultantMethod::kModular}) {
    CHECK(ep::resultant(f, g, 1, m) == want);
  }
}

TEST_CASE("modular and Bareiss determinants agree") {
  testsupport::Rng rng(testsupport::kSeed + 20);
  auto reg = ep::make_registry({"y", "t"});
  for (int i = 0; i < 25; ++i) {
    // Integer coefficients so the modular path applies.
    auto rnd = [&] {
      std::vector<ep::Poly::Term> ts;
      for (unsigned a = 0; a <= 4; ++a) {
        for (unsigned b = 0; b <= 3; ++b) {
          const long c = testsupport::uniform(rng, -20, 20);
          if (c) ts.push_back({ep::Monomial::var(0, a) * ep::Monomial::var(1, b), ep::Rational(c)});
        }
      }
      return ep::Poly(reg, std::move(ts));
    };
    const ep::Poly p = rnd(), q = rnd();
    if (ep::degree_in(p, 0) < 1 || ep::degree_in(q, 0) < 1) continue;
    CHECK(ep::resultant(p, q, 0, ep::ResultantMethod::kModular) ==
          ep::resultant(p, q, 0, ep::ResultantMethod::kBareiss));
  }
}

TEST_CASE("linear pair shortcut") {
  const auto r = testprops::linear_pair_resultant();
  INFO(r.detail);
  CHECK(r.ok);
}

TEST_CASE("evaluation commutes with the resultant") {
  const auto r = testprops::resultant_evaluation();
  INFO(r.detail);
  CHECK(r.ok);
}

TEST_CASE("prime power divides the resultant when reductions share a factor") {
  const auto r = testprops::ufd_divisibility();
  INFO(r.detail);
  CHECK(r.ok);
}

TEST_CASE("univariate gcd and rational roots") {
  auto reg = ep::make_registry({"t"});
  const ep::Poly a = ep::parse_poly(reg, "t^3 - 6*t^2 + 11*t - 6");
  const ep::Poly b = ep::parse_poly(reg, "2*t^2 - 2*t - 4");
  CHECK(ep::univariate_gcd(a, b) == ep::parse_poly(reg, "t - 2"));
  CHECK(ep::univariate_gcd(a, ep::parse_poly(reg, "t + 5")) == ep::Poly::constant(reg, 1));
  const auto roots = ep::rational_roots(ep::parse_poly(reg, "4*t^3 - 4*t^2 - 9*t + 9"));
  CHECK(roots == std::vector<ep::RationalRoot>{{ep::Rational(-3, 2), 1}, {ep::Rational(1), 1}, {ep::Rational(3, 2), 1}});
  const auto rep = ep::rational_roots(ep::parse_poly(reg, "t^3 + 2*t^2 + t"));
  CHECK(rep == std::vector<ep::RationalRoot>{{ep::Rational(-1), 2}, {ep::Rational(0), 1}});
  CHECK(ep::factor_integer(ep::Integer(-360)) ==
        std::vector<std::pair<ep::Integer, unsigned>>{{2, 3}, {3, 2}, {5, 1}});
}
