#include <algorithm>
#include "doctest.h"
#include "toricnp/error.hpp"
#include "toricnp/polytope.hpp"

using namespace toricnp;

namespace {

Poly poly(const std::vector<std::string>& vars, std::initializer_list<std::pair<long, std::vector<long>>> terms) {
  Poly f(vars);
  for (const auto& [c, e] : terms) {
    ExpVector ev;
    for (long x : e) ev.push_back(x);
    f.add_term(Coeff(c), ev);
  }
  return f;
}

std::vector<Point> pts(std::initializer_list<std::initializer_list<long>> l) {
  std::vector<Point> out;
  for (auto p : l) out.push_back(to_int_vector(p));
  return out;
}

std::vector<Point> vertex_points(const LatticePolytope& p) {
  std::vector<Point> out;
  for (auto i : p.vertices) out.push_back(p.points[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("Catalan triangle") {
  Poly f = poly({"x", "y"}, {{1, {0, 1}}, {-1, {1, 0}}, {-1, {2, 2}}});
  LatticePolytope p = newton_polytope(f);
  CHECK(p.affine_dim == 2);
  CHECK(vertex_points(p) == pts({{0, 1}, {1, 0}, {2, 2}}));
  CHECK(p.facets.size() == 3);
  auto d = distinguished_facets(p);
  REQUIRE(d.size() == 3);
  // first in facet order: the y ~ x branch
  CHECK(d[0].dominant);
  CHECK(d[0].normal == to_int_vector({1, 1}));
  CHECK(p.points[d[0].off_point] == to_int_vector({2, 2}));
  CHECK(*d[0].gap == 3);
  CHECK(d[0].exponents == std::vector<Rational>{1});
  // the second branch y ~ x^-2 through (0,1),(2,2)
  CHECK(d[1].dominant);
  CHECK(d[1].exponents == std::vector<Rational>{-2});
  CHECK(*d[1].gap == 3);
  // the facet through (1,0),(2,2) has m_1 < 0
  CHECK_FALSE(d[2].dominant);
}

TEST_CASE("three-variable example polytope") {
  Poly f = poly({"x1", "x2", "x3"}, {{1, {1, 1, 0}}, {1, {1, 2, 1}}, {1, {2, 1, 2}}, {1, {2, 2, 2}}});
  LatticePolytope p = newton_polytope(f);
  CHECK(p.affine_dim == 3);
  CHECK(p.vertices.size() == 4);
  CHECK(p.facets.size() == 4);
  for (const auto& fc : p.facets)
    for (std::size_t i = 0; i < p.points.size(); ++i) {
      Integer v = 0;
      for (std::size_t j = 0; j < 3; ++j) v += fc.normal[j] * p.points[i][j];
      CHECK(v >= fc.offset);
    }
  // facet through the first three points
  auto d = distinguished_facets(p);
  bool found = false;
  for (const auto& df : d)
    if (p.points[df.off_point] == to_int_vector({2, 2, 2})) {
      found = true;
      CHECK(df.normal == to_int_vector({2, 1, -1}));
      CHECK(df.exponents == std::vector<Rational>{make_rational(1, 2), make_rational(-1, 2)});
    }
  CHECK(found);
}

TEST_CASE("single monomial and degenerate hulls") {
  LatticePolytope p = newton_polytope(poly({"x", "y"}, {{5, {2, 3}}}));
  CHECK(p.points.size() == 1);
  CHECK(p.facets.empty());
  CHECK(p.affine_dim == 0);
  LatticePolytope line = convex_hull(pts({{0, 0}, {2, 2}, {1, 1}}));
  CHECK(line.affine_dim == 1);
  CHECK(line.facets.empty());
  CHECK(vertex_points(line) == pts({{0, 0}, {2, 2}}));
  CHECK_THROWS(newton_polytope(Poly({"x"})));
}

TEST_CASE("facet normals") {
  CHECK(facet_normal(pts({{1, -1, 1}, {0, 0, 2}, {0, 1, 1}})) == to_int_vector({2, 1, 1}));
  CHECK(facet_normal(pts({{0, 0, 0}, {0, 1, 1}, {1, 0, 2}})) == to_int_vector({2, 1, -1}));
  CHECK(facet_normal(pts({{2, 0}, {0, 2}})) == to_int_vector({1, 1}));
  CHECK_THROWS_WITH(facet_normal(pts({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}})),
                    doctest::Contains("does not span a hyperplane"));
}

TEST_CASE("substitution exponents") {
  CHECK(substitution_exponents(to_int_vector({2, 1, 1})) ==
        std::vector<Rational>{make_rational(1, 2), make_rational(1, 2)});
  CHECK(substitution_exponents(to_int_vector({1, 0})) == std::vector<Rational>{0});
  CHECK(substitution_exponents(to_int_vector({2, 1, -1})) ==
        std::vector<Rational>{make_rational(1, 2), make_rational(-1, 2)});
  CHECK_THROWS_WITH(substitution_exponents(to_int_vector({0, 1})), doctest::Contains("zero first component"));
}

TEST_CASE("square has no distinguished facet") {
  auto p = convex_hull(pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  CHECK(p.facets.size() == 4);
  CHECK(distinguished_facets(p).empty());
}

TEST_CASE("Kruskal points") {
  DiffPoly vdp({"x", "y"}, "x", "y");
  ParamMono mu = ParamMono::single("mu");
  vdp.add_term(Coeff(1), exp_vector({0, 0}), 2);
  vdp.add_term(Coeff(1, mu), exp_vector({0, 2}), 1);
  vdp.add_term(Coeff(-1, mu), exp_vector({0, 0}), 1);
  vdp.add_term(Coeff(1, ParamMono::single("omega", 2)), exp_vector({0, 1}));
  CHECK(kruskal_points(vdp) == pts({{-2, 1}, {-1, 3}, {-1, 1}, {0, 1}}));

  LatticePolytope p = convex_hull(kruskal_points(vdp));
  auto d = distinguished_facets(p);
  REQUIRE(d.size() >= 1);
  bool line = false;
  for (const auto& df : d)
    if (p.points[df.off_point] == to_int_vector({-1, 3})) {
      line = true;
      CHECK(df.normal == to_int_vector({0, 1}));
      CHECK_FALSE(df.dominant);
      CHECK_FALSE(df.gap.has_value());
      CHECK(df.raw_gap == 2);
    }
  CHECK(line);

  DiffPoly ric({"eps", "x", "y"}, "x", "y");
  ric.add_term(Coeff(1), exp_vector({1, 0, 0}), 1);
  ric.add_term(Coeff(-1), exp_vector({0, 0, 2}));
  ric.add_term(Coeff(-1, ParamMono::single("R")), exp_vector({0, 1, 1}));
  ric.add_term(Coeff(1), exp_vector({0, 1, 2}));
  CHECK(kruskal_points(ric) == pts({{1, -1, 1}, {0, 0, 2}, {0, 1, 1}, {0, 1, 2}}));
  LatticePolytope rp = convex_hull(kruskal_points(ric));
  bool found = false;
  for (const auto& df : distinguished_facets(rp))
    if (rp.points[df.off_point] == to_int_vector({0, 1, 2})) {
      found = true;
      CHECK(df.normal == to_int_vector({2, 1, 1}));
      CHECK(*df.gap == make_rational(1, 2));
      CHECK(df.dominant);
    }
  CHECK(found);
}

TEST_CASE("gap and normals are translation invariant") {
  auto base = pts({{0, 1}, {1, 0}, {2, 2}});
  auto shifted = base;
  for (auto& q : shifted) {
    q[0] += 3;
    q[1] -= 2;
  }
  auto a = distinguished_facets(convex_hull(base));
  auto b = distinguished_facets(convex_hull(shifted));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].normal == b[i].normal);
    CHECK(a[i].gap == b[i].gap);
  }
}

TEST_CASE("univariate hull") {
  auto p = convex_hull(pts({{0}, {3}, {1}}));
  CHECK(p.facets.size() == 2);
  CHECK(vertex_points(p) == pts({{0}, {3}}));
}
