#include "doctest.h"

#include "eisenprod/errors.hpp"
#include "eisenprod/poly.hpp"
#include "properties.hpp"

namespace ep = eisenprod;

TEST_CASE("canonical text and term order") {
  auto reg = ep::make_registry({"x", "y"});
  const ep::Poly p = ep::parse_poly(reg, "y^2 + 3*x*y - x^2 + 1/2");
  CHECK(ep::to_string(p) == "-x^2 + 3*x*y + y^2 + 1/2");
  CHECK(p.total_degree() == 2);
  CHECK(ep::degree_in(p, reg->id("y")) == 2);
  CHECK(ep::to_string(ep::Poly(reg)) == "0");
  CHECK(ep::Poly(reg).total_degree() == ep::kDegreeNegInf);
  CHECK(ep::parse_poly(reg, ep::to_string(p)) == p);
  CHECK(ep::digest(p) == ep::digest(ep::parse_poly(reg, "1/2 + y^2 - x^2 + 3*y*x")));
}

TEST_CASE("substitution") {
  auto reg = ep::make_registry({"x", "y"});
  const ep::Poly xy = ep::parse_poly(reg, "x*y");
  CHECK(ep::substitute(xy, std::map<ep::VarId, ep::Rational>{{reg->id("x"), 2}}) == ep::parse_poly(reg, "2*y"));
  const std::map<ep::VarId, ep::Poly> swap{{reg->id("x"), ep::parse_poly(reg, "y")}, {reg->id("y"), ep::parse_poly(reg, "x")}};
  CHECK(ep::substitute(ep::parse_poly(reg, "x^2 + 2*y"), swap) == ep::parse_poly(reg, "y^2 + 2*x"));
}

TEST_CASE("exact division") {
  auto reg = ep::make_registry({"x", "y"});
  const ep::Poly a = ep::parse_poly(reg, "x^3 - y^3");
  const ep::Poly d = ep::parse_poly(reg, "x - y");
  CHECK(ep::exact_div(a, d) == ep::parse_poly(reg, "x^2 + x*y + y^2"));
  CHECK_THROWS_AS(ep::exact_div(a, ep::parse_poly(reg, "x + 2*y")), ep::DivisionNotExact);
  CHECK_FALSE(ep::try_exact_div(a, ep::parse_poly(reg, "x + 2*y")).has_value());
  CHECK_THROWS_AS(ep::exact_div(a, ep::Poly(reg)), ep::DomainError);
}

TEST_CASE("content and primitive part") {
  auto reg = ep::make_registry({"x"});
  const ep::Poly p = ep::parse_poly(reg, "-4/3*x^2 + 2/3");
  CHECK(ep::content(p) == ep::Rational(2, 3));
  CHECK(ep::primitive_part(p) == ep::parse_poly(reg, "2*x^2 - 1"));
}

TEST_CASE("monomial limits raise instead of wrapping") {
  CHECK_THROWS_AS(ep::Monomial::var(0, 256), ep::DomainError);
  CHECK_THROWS_AS(ep::Monomial::var(ep::Monomial::kMaxVars, 1), ep::DomainError);
  CHECK_THROWS_AS(ep::Monomial::var(0, 200) * ep::Monomial::var(0, 100), ep::DomainError);
}

TEST_CASE("registries do not mix") {
  auto r1 = ep::make_registry({"x"});
  auto r2 = ep::make_registry({"x"});
  CHECK_THROWS_AS(ep::parse_poly(r1, "x") + ep::parse_poly(r2, "x"), ep::RegistryMismatch);
}

TEST_CASE("extreme monomials follow the componentwise order") {
  auto reg = ep::make_registry({"x", "y"});
  const ep::Poly p = ep::parse_poly(reg, "3*x^4*y^2 + 2*x^3 + 5*x*y^3 + 7*y^2 + x^2*y + 1");
  const std::vector<ep::VarId> xy{0, 1};
  CHECK(ep::extreme_monomials(p, xy) == std::vector<std::vector<unsigned>>{{4, 2}, {1, 3}});
  const std::vector<unsigned> e{1, 3};
  CHECK(ep::coeff_of_monomial(p, xy, e) == ep::Poly::constant(reg, 5));
}

TEST_CASE("ring axioms on random polynomials") {
  const auto r = testprops::ring_axioms();
  INFO(r.detail);
  CHECK(r.ok);
}

TEST_CASE("exact_div inverts multiplication") {
  const auto r = testprops::exact_div_roundtrip();
  INFO(r.detail);
  CHECK(r.ok);
}
