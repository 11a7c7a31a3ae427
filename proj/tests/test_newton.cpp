#include "doctest.h"

#include "eisenprod/errors.hpp"
#include "eisenprod/newton.hpp"
#include "eisenprod/witness.hpp"
#include "properties.hpp"
#include "support.hpp"

namespace ep = eisenprod;
using Pts = std::vector<ep::LatticePoint>;
using ExpList = std::vector<std::vector<unsigned>>;

namespace {

ep::ConvexPolygon random_polygon(testsupport::Rng& rng) {
  Pts pts;
  const long n = testsupport::uniform(rng, 1, 8);
  for (long i = 0; i < n; ++i) pts.emplace_back(testsupport::uniform(rng, -10, 10), testsupport::uniform(rng, -10, 10));
  return ep::ConvexPolygon::hull(pts);
}

ep::ConvexPolygon brute_sum(const ep::ConvexPolygon& a, const ep::ConvexPolygon& b) {
  Pts pts;
  for (auto [x1, y1] : a.vertices()) {
    for (auto [x2, y2] : b.vertices()) pts.emplace_back(x1 + x2, y1 + y2);
  }
  return ep::ConvexPolygon::hull(pts);
}

}  // namespace

TEST_CASE("hull of the worked polynomial") {
  auto reg = ep::make_registry({"x", "y"});
  const ep::Poly p = ep::parse_poly(reg, "3*x^4*y^2 + 2*x^3 + 5*x*y^3 + 7*y^2 + x^2*y + 1");
  const ep::ConvexPolygon h = ep::newton_polygon(p, 0, 1);
  CHECK(h.vertices() == Pts{{0, 0}, {3, 0}, {4, 2}, {1, 3}, {0, 2}});
  // The four vertices away from the origin, often listed as its extremes.
  Pts nonzero(h.vertices().begin() + 1, h.vertices().end());
  std::sort(nonzero.begin(), nonzero.end());
  CHECK(nonzero == Pts{{0, 2}, {1, 3}, {3, 0}, {4, 2}});
  CHECK_THROWS_AS(ep::newton_polygon(ep::Poly(reg), 0, 1), ep::DomainError);
}

TEST_CASE("degenerate polygons") {
  const auto pt = ep::ConvexPolygon::hull({{2, 3}, {2, 3}});
  CHECK(pt.vertices() == Pts{{2, 3}});
  const auto seg = ep::ConvexPolygon::hull({{0, 0}, {2, 2}, {1, 1}});
  CHECK(seg.vertices() == Pts{{0, 0}, {2, 2}});
  CHECK(ep::area(seg) == 0);
  CHECK(ep::minkowski_sum(seg, pt).vertices() == Pts{{2, 3}, {4, 5}});
  CHECK(ep::area(ep::minkowski_sum(seg, ep::ConvexPolygon::hull({{0, 0}, {1, 0}}))) == 2);
}

TEST_CASE("Minkowski sum of the two example supports") {
  const auto P = ep::ConvexPolygon::hull({{0, 0}, {0, 2}, {2, 1}});
  const auto Q = ep::ConvexPolygon::hull({{0, 0}, {0, 3}, {3, 0}, {2, 1}});
  const auto S = ep::minkowski_sum(P, Q);
  CHECK(S.vertices() == Pts{{0, 0}, {3, 0}, {5, 1}, {2, 4}, {0, 5}});
  CHECK(ep::area(P) == 2);
  CHECK(ep::area(Q) == ep::Rational(9, 2));
  CHECK(ep::area(S) == ep::Rational(31, 2));
  CHECK(ep::bernstein_bound(P, Q) == 9);
}

TEST_CASE("polygon algebra on random inputs") {
  testsupport::Rng rng(testsupport::kSeed + 30);
  for (int i = 0; i < 300; ++i) {
    const auto A = random_polygon(rng), B = random_polygon(rng), C = random_polygon(rng);
    CHECK(ep::ConvexPolygon::hull(A.vertices()) == A);
    const auto AB = ep::minkowski_sum(A, B);
    CHECK(AB == brute_sum(A, B));
    CHECK(AB == ep::minkowski_sum(B, A));
    CHECK(ep::minkowski_sum(AB, C) == ep::minkowski_sum(A, ep::minkowski_sum(B, C)));
    CHECK(ep::area(AB) >= ep::area(A) + ep::area(B));
    CHECK(ep::minkowski_difference(AB, B) == A);
    CHECK(ep::polygon_from_json(ep::to_json(AB)) == AB);
  }
}

TEST_CASE("Minkowski difference rejects non-summands") {
  const auto tri = ep::ConvexPolygon::hull({{0, 0}, {2, 0}, {0, 2}});
  const auto sq = ep::ConvexPolygon::hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK_THROWS_AS(ep::minkowski_difference(tri, sq), ep::DomainError);
  CHECK(ep::minkowski_difference(ep::minkowski_sum(tri, tri), tri) == tri);
}

TEST_CASE("generic coefficient names") {
  const auto t = ep::generic_terms({{1, 0}, {0, 1}, {0, 0}}, "'");
  REQUIRE(t.size() == 3);
  CHECK(t[0].coeff == "a'");
  CHECK(t[2].coeff == "c'");
  ExpList many(14, std::vector<unsigned>{0, 0});
  const auto u = ep::generic_terms(many);
  CHECK(u[11].coeff == "o");
  CHECK_THROWS_AS(ep::generic_terms(ExpList(20, std::vector<unsigned>{0, 0})), ep::DomainError);
}

TEST_CASE("check resultant for the F pair") {
  const auto r = ep::generic_check_resultant(ep::check_F35_terms(), ep::check_F36_terms(), 2);
  CHECK(r.extremes == ExpList{{24, 0}, {22, 1}, {21, 2}, {19, 3}, {18, 4}, {16, 5}, {15, 6}, {13, 7},
                              {12, 8}, {10, 9}, {8, 10}, {6, 11}, {4, 12}, {2, 13}, {0, 14}});
  auto product = [](const ep::CheckResultant& c) {
    auto v = [&](const char* n) { return c.var(n); };
    return v("a'") * (v("f") * v("a'") - v("b") * v("p'")) *
           (v("j") * v("j") * v("p'") - v("f") * v("j") * v("f'") + v("f") * v("f") * v("j'"));
  };
  // Res(p, q) = p_m^n prod q(roots of p) with m = n = 3 gives the minus sign.
  CHECK(r.coefficient({12, 8}) == -product(r));
  CHECK_FALSE(r.coefficient({11, 8}).is_zero());
  const auto swapped = ep::generic_check_resultant(ep::check_F36_terms(), ep::check_F35_terms(), 2);
  CHECK(swapped.coefficient({12, 8}) == product(swapped));
}

TEST_CASE("check resultants for the R and T pairs") {
  const auto r = ep::generic_check_resultant(ep::check_R35_terms(), ep::check_R36_terms(), 2);
  CHECK(r.extremes == ExpList{{9, 0}, {7, 1}, {5, 2}, {2, 3}});
  CHECK(r.coefficient({5, 2}) == r.var("c") * r.var("d'") - r.var("b") * r.var("e'"));

  const auto u = ep::generic_check_resultant(ep::check_R22_terms(), ep::check_T_terms(), 1);
  CHECK(u.degree("x") == 20);
  // c' on x^4 alone gives the same degree.
  auto t = ep::check_T_terms();
  t[2].exps = {4, 0};
  CHECK(ep::generic_check_resultant(ep::check_R22_terms(), t, 1).degree("x") == 20);

  CHECK_THROWS_AS(ep::generic_check_resultant({{{1, 0}, "a"}}, {{{2, 0}, "b"}}, 1), ep::DomainError);
}

TEST_CASE("Bernstein bound holds on random coefficients") {
  unsigned generic = 0;
  const auto r = testprops::bernstein_draws(1000, &generic);
  INFO(r.detail);
  CHECK(r.ok);
  CHECK(generic >= 950);
}
