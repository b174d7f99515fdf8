#include "doctest.h"
#include "toricnp/diffnp.hpp"
#include "toricnp/error.hpp"
#include "toricnp/npexpand.hpp"

using namespace toricnp;

namespace {

Coeff pc(long c, std::initializer_list<std::pair<const char*, long>> params = {}) {
  ParamMono pm;
  for (const auto& [n, k] : params) pm.set(n, k);
  return Coeff(c, pm);
}

ExpVector ev(std::initializer_list<Rational> l) { return ExpVector(l); }

// eps*y' - y^2 - R*x*y + x*y^2 over (eps, x, y)
DiffPoly riccati_perturbed() {
  DiffPoly p({"eps", "x", "y"}, "x", "y");
  p.add_term(pc(1), ev({1, 0, 0}), 1);
  p.add_term(pc(-1), ev({0, 0, 2}));
  p.add_term(pc(-1, {{"R", 1}}), ev({0, 1, 1}));
  p.add_term(pc(1), ev({0, 1, 2}));
  return p;
}

DiffPoly van_der_pol() {
  DiffPoly p({"x", "y"}, "x", "y");
  p.add_term(pc(1), ev({0, 0}), 2);
  p.add_term(pc(1, {{"mu", 1}}), ev({0, 2}), 1);
  p.add_term(pc(-1, {{"mu", 1}}), ev({0, 0}), 1);
  p.add_term(pc(1, {{"omega", 2}}), ev({0, 1}));
  return p;
}

DistinguishedFacet facet_off(const DiffPoly& eq, const Point& off) {
  LatticePolytope p = convex_hull(kruskal_points(eq));
  for (const auto& df : distinguished_facets(p))
    if (p.points[df.off_point] == off) return df;
  FAIL("facet not found");
  return {};
}

// Riccati in (eps, y) after x = s*eps^(1/2)
DiffPoly full_r() {
  DiffPoly p({"eps", "y"}, "eps", "y");
  p.add_term(Coeff(2, ParamMono::single("s", -1)), ev({make_rational(3, 2), 0}), 1);
  p.add_term(pc(-1), ev({0, 2}));
  ParamMono sR;
  sR.set("R", 1);
  sR.set("s", 1);
  p.add_term(Coeff(-1, sR), ev({make_rational(1, 2), 1}));
  p.add_term(pc(1, {{"s", 1}}), ev({make_rational(1, 2), 2}));
  return p;
}

Poly params_poly(std::initializer_list<std::pair<long, std::vector<std::pair<const char*, long>>>> terms) {
  Poly p(std::vector<std::string>{});
  for (const auto& [c, ps] : terms) {
    ParamMono pm;
    for (const auto& [n, k] : ps) pm.set(n, k);
    p.add_term(Coeff(c, pm), ExpVector{});
  }
  return p;
}

}  // namespace

TEST_CASE("chain rule for the independent variable") {
  DiffPoly eq = riccati_perturbed();
  DiffPoly scaled = scale_independent(eq, Coeff::param("s"), make_rational(1, 2), "eps");
  CHECK(scaled == full_r());
  CHECK(to_string(scaled) == "2*s^-1*eps^(3/2)*D(y,eps,1) - y^2 - R*s*eps^(1/2)*y + s*eps^(1/2)*y^2");

  CHECK(scale_independent(eq, Coeff(1), 1, "x") == eq);
  CHECK_THROWS(scale_independent(eq, Coeff(1), 0, "u"));

  // d2y/dx2 with x = u^2
  DiffPoly second({"x", "y"}, "x", "y");
  second.add_term(pc(1), ev({0, 0}), 2);
  DiffPoly s2 = scale_independent(second, Coeff(1), 2, "u");
  DiffPoly expect({"u", "y"}, "u", "y");
  expect.add_term(Coeff(make_rational(1, 4)), ev({-2, 0}), 2);
  expect.add_term(Coeff(make_rational(-1, 4)), ev({-3, 0}), 1);
  CHECK(s2 == expect);
  // against y = x^m, i.e. y = u^(2m)
  for (long m = 0; m <= 5; ++m) {
    PuiseuxSeries lhs = substitute_series_diff(second, PuiseuxSeries::monomial("x", 1, m));
    PuiseuxSeries rhs = substitute_series_diff(s2, PuiseuxSeries::monomial("u", 1, 2 * m));
    CHECK(lhs.coefficient(m - 2) == rhs.coefficient(2 * m - 4));
  }

  DiffPoly third({"x", "y"}, "x", "y");
  third.add_term(pc(1), ev({0, 0}), 3);
  CHECK_THROWS_WITH(scale_independent(third, Coeff(1), 2, "u"), doctest::Contains("above 2"));
}

TEST_CASE("composition of rescalings") {
  DiffPoly eq({"x", "y"}, "x", "y");
  eq.add_term(pc(3), ev({2, 1}), 2);
  eq.add_term(pc(-1), ev({1, 0}), 1);
  eq.add_term(pc(1), ev({0, 2}));
  struct Case {
    Rational s1, r1, s2, r2;
  };
  for (const auto& c : {Case{2, 3, 5, 2}, Case{1, make_rational(1, 2), 1, 4}, Case{3, -1, 2, 2}}) {
    DiffPoly two = scale_independent(scale_independent(eq, Coeff(c.s1), c.r1, "u"), Coeff(c.s2), c.r2, "v");
    Coeff s = Coeff(c.s1) * Coeff(c.s2).pow(c.r1.get_num().get_si());
    DiffPoly one = scale_independent(eq, s, c.r1 * c.r2, "v");
    CHECK(two == one);
  }
}

TEST_CASE("facet split") {
  DiffPoly vdp = van_der_pol();
  DistinguishedFacet df = facet_off(vdp, to_int_vector({-1, 3}));
  FacetSplitDiff split = facet_split_diff(vdp, df);
  CHECK(to_string(split.Ftilde) == "D(y,x,2) - mu*D(y,x,1) + omega^2*y");
  CHECK(to_string(split.Gtilde) == "-mu*y^2*D(y,x,1)");
  CHECK_FALSE(split.gap.has_value());

  DiffPoly ric = riccati_perturbed();
  DistinguishedFacet rf = facet_off(ric, to_int_vector({0, 1, 2}));
  FacetOde ode = facet_ode(ric, rf);
  CHECK(to_string(ode.split.Ftilde) == "eps*D(y,x,1) - y^2 - R*x*y");
  CHECK(to_string(ode.scaled.Ftilde) == "2*s^-1*eps^(3/2)*D(y,eps,1) - y^2 - R*s*eps^(1/2)*y");
  CHECK(to_string(ode.scaled.Gtilde) == "-s*eps^(1/2)*y^2");
  CHECK(*ode.scaled.gap == make_rational(1, 2));
  REQUIRE(ode.substitutions.size() == 1);
  CHECK(ode.substitutions[0].second == "s*eps^(1/2)");

  // reassembly: eq = F - G
  DiffPoly back = split.Ftilde;
  for (const auto& t : split.Gtilde.terms()) back.add_term(t.coeff * Coeff(-1), t.exps, t.order);
  CHECK(back == vdp);
}

TEST_CASE("power-law facet solutions") {
  DiffPoly ric = riccati_perturbed();
  FacetOde ode = facet_ode(ric, facet_off(ric, to_int_vector({0, 1, 2})));
  PowerLawSolution sol = powerlaw_facet_solution(ode.scaled.Ftilde);
  REQUIRE(sol.status == PowerLawSolution::Status::Unique);
  CHECK(sol.rho == make_rational(1, 2));
  CHECK(sol.sigma_num == params_poly({{1, {}}, {-1, {{"s", 2}, {"R", 1}}}}));
  CHECK(sol.sigma_den == params_poly({{1, {{"s", 1}}}}));
  // back-substitution: (2/s)(1/2) sigma - sigma^2 - s R sigma = 0 with sigma = num/den
  Poly num = sol.sigma_num, den = sol.sigma_den;
  Poly residual = params_poly({{1, {{"s", -1}}}}) * den - num - params_poly({{1, {{"s", 1}, {"R", 1}}}}) * den;
  CHECK(residual.is_zero());

  DiffPoly lin({"eps", "y"}, "eps", "y");
  lin.add_term(pc(1), ev({1, 0}), 1);
  lin.add_term(pc(-1), ev({0, 1}));
  PowerLawSolution fam = powerlaw_facet_solution(lin);
  CHECK(fam.status == PowerLawSolution::Status::Family);
  CHECK(fam.rho_roots == std::vector<Rational>{1});

  DiffPoly vdp = van_der_pol();
  FacetSplitDiff split = facet_split_diff(vdp, facet_off(vdp, to_int_vector({-1, 3})));
  PowerLawSolution no = powerlaw_facet_solution(split.Ftilde);
  CHECK(no.status == PowerLawSolution::Status::Refused);
  CHECK(no.reason.find("rho-2, rho-1, rho") != std::string::npos);
}

TEST_CASE("restricted iteration on the Riccati facet") {
  struct Case {
    Rational s, R;
  };
  for (const auto& c : {Case{1, 2}, Case{1, 3}, Case{2, make_rational(1, 2)}}) {
    std::map<std::string, Rational> vals{{"s", c.s}, {"R", c.R}};
    const Rational sigma = (1 - c.s * c.s * c.R) / c.s;
    const Rational rho = make_rational(1, 2);
    PuiseuxSeries one = np_expand_diff(full_r(), sigma, rho, 1, vals);
    // z1 = correction / y0 at relative order eps^(1/2)
    const Rational z1 = one.coefficient(1) / sigma;
    CHECK(z1 == -(1 - c.s * c.s * c.R) / (c.s * c.R));

    std::optional<Rational> last;
    for (int N = 1; N <= 3; ++N) {
      PuiseuxSeries s = np_expand_diff(full_r(), sigma, rho, N, vals);
      auto r = residual_order_diff(full_r(), s, 100, vals);
      REQUIRE(r.has_value());
      CHECK(*r > s.terms().rbegin()->first);
      if (last) CHECK(*r > *last);
      last = r;
      if (N == 3) CHECK(*r >= make_rational(5, 2));
    }
  }
  std::map<std::string, Rational> vals{{"s", 1}, {"R", 2}};
  PuiseuxSeries s = np_expand_diff(full_r(), -1, make_rational(1, 2), 1, vals);
  CHECK(to_string(s) == "-eps^(1/2) - 1/2*eps + O(eps^(3/2))");
  CHECK_THROWS_WITH(np_expand_diff(full_r(), -1, make_rational(1, 2), 1, {{"s", 1}}), doctest::Contains("'R'"));
}

TEST_CASE("derivative-free input agrees with the polynomial expansion") {
  Poly f({"x", "y"});
  f.add_term(Coeff(1), ev({0, 1}));
  f.add_term(Coeff(-1), ev({1, 0}));
  f.add_term(Coeff(-1), ev({2, 2}));
  auto d = distinguished_facets(newton_polytope(f));
  PuiseuxSeries a = np_expand(f, d[0], 1, 4);
  PuiseuxSeries b = np_expand_diff(DiffPoly::from_poly(f), 1, 1, 4);
  CHECK(a == b);
}

TEST_CASE("perturbation equations") {
  DiffPoly lin({"x", "y"});
  lin.add_term(pc(1), ev({0, 1}));
  lin.add_term(pc(-1), ev({1, 0}));
  DiffPoly z = emit_perturbation_equation(lin, {}, "y");
  CHECK(z.vars() == std::vector<std::string>{"x", "z", "y0"});
  CHECK(to_string(z) == "y0 + z*y0 - x");

  // power-law trial into the rescaled Riccati equation: the z-free part is the residual of y0
  std::map<std::string, Rational> vals{{"s", 1}, {"R", 2}};
  DiffPoly eq = full_r().evaluate_params(vals);
  PerturbationTrial trial;
  trial.power_law = std::make_pair(Coeff(-1), make_rational(1, 2));
  DiffPoly zeq = emit_perturbation_equation(eq, trial);
  PuiseuxSeries res = substitute_series_diff(eq, PuiseuxSeries::monomial("eps", -1, make_rational(1, 2)));
  PuiseuxSeries z_free("eps");
  for (const auto& t : zeq.terms())
    if (t.order == 0 && t.exps[zeq.var_index("z")] == 0) z_free.add_term(t.coeff.scalar, t.exps[0]);
  CHECK(z_free == res);
  // and z = z1 eps^(1/2) with z1 = 1/2 kills the lowest order
  PuiseuxSeries zs = PuiseuxSeries::monomial("eps", make_rational(1, 2), make_rational(1, 2));
  DiffPoly zonly({"eps", "z"}, "eps", "z");
  for (const auto& t : zeq.terms()) zonly.add_term(t.coeff, t.exps, t.order);
  PuiseuxSeries after = substitute_series_diff(zonly, zs);
  CHECK(*after.lead_exponent() > *res.lead_exponent());

  // known corrections enter through their derivatives
  DiffPoly vdp = van_der_pol();
  PerturbationTrial known;
  Poly k({"x"});
  k.add_term(Coeff(1, ParamMono::single("C1")), ev({1}));
  known.known = k;
  DiffPoly zk = emit_perturbation_equation(vdp, known);
  CHECK(zk.vars() == std::vector<std::string>{"x", "z", "y0", "y0_x", "y0_xx"});
  CHECK(zk.max_order() == 2);
}
