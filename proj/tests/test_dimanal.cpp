#include <algorithm>
#include <initializer_list>

#include "doctest.h"
#include "toricnp/dimanal.hpp"

using namespace toricnp;

namespace {

using ParamList = std::initializer_list<std::pair<const char*, long>>;

void term(DiffPoly& p, long c, ParamList params, std::initializer_list<long> e, int order = 0) {
  ParamMono pm;
  for (const auto& [n, k] : params) pm.set(n, k);
  p.add_term(Coeff(c, pm), exp_vector(e), order);
}

DimensionedSystem example1() {
  DimensionedSystem s;
  s.base_dims = {"M", "L", "T"};
  s.vars = {"x", "y"};
  s.consts = {"a", "b", "c", "d"};
  s.var_dims = {{"x", to_int_vector({1, -3, 0})}, {"y", to_int_vector({1, -1, -2})}};
  s.equation = DiffPoly({"x", "y"});
  term(s.equation, 1, {{"a", 1}}, {0, 3});
  term(s.equation, 1, {{"b", 1}}, {1, 2});
  term(s.equation, 1, {{"c", 1}}, {2, 1});
  term(s.equation, 1, {{"d", 1}}, {4, 0});
  return s;
}

DimensionedSystem riccati() {
  DimensionedSystem s;
  s.base_dims = {"M", "L", "T"};
  s.vars = {"x", "y"};
  s.consts = {"a", "b", "c"};
  s.var_dims = {{"x", to_int_vector({0, 0, 1})}, {"y", to_int_vector({0, 1, 0})}};
  s.equation = DiffPoly({"x", "y"}, "x", "y");
  term(s.equation, 1, {}, {0, 0}, 1);
  term(s.equation, -1, {{"a", 1}}, {0, 2});
  term(s.equation, 1, {{"b", 1}}, {1, 2});
  term(s.equation, -1, {{"c", 1}}, {1, 1});
  return s;
}

DimensionedSystem schrodinger(long hbar_power) {
  DimensionedSystem s;
  s.base_dims = {"M", "L", "T"};
  s.vars = {"x", "psi"};
  s.consts = {"m", "hbar", "omega", "E"};
  s.var_dims = {{"x", to_int_vector({0, 1, 0})}};
  s.const_dims = {{"m", to_int_vector({1, 0, 0})},
                  {"hbar", to_int_vector({1, 2, -1})},
                  {"omega", to_int_vector({0, 0, -1})},
                  {"E", to_int_vector({1, 2, -2})}};
  s.equation = DiffPoly({"x", "psi"}, "x", "psi");
  ParamMono p1;
  p1.set("hbar", hbar_power);
  p1.set("m", -1);
  s.equation.add_term(Coeff(make_rational(-1, 2), p1), exp_vector({0, 0}), 2);
  ParamMono p2;
  p2.set("m", 1);
  p2.set("omega", 2);
  s.equation.add_term(Coeff(make_rational(1, 2), p2), exp_vector({2, 1}));
  term(s.equation, -1, {{"E", 1}}, {0, 1});
  return s;
}

DimMap full_dims(const DimensionedSystem& s) {
  DimMap dims = s.var_dims;
  dims.insert(s.const_dims.begin(), s.const_dims.end());
  dims.merge(infer_constant_dimensions(s, s.var_dims, inference_beta(s)));
  return dims;
}

Group group(const GroupSelection& sel, const std::string& anchor) {
  for (const auto& g : sel.groups)
    if (g.anchor == anchor) return g;
  FAIL("no group for " << anchor);
  return {};
}

std::string exps(const Group& g) {
  std::string out;
  for (const auto& [n, e] : g.exponents) out += n + "^" + e.get_str() + " ";
  return out;
}

}  // namespace

TEST_CASE("term_dimension") {
  DimensionedSystem s = riccati();
  DimMap dims = full_dims(s);
  const auto& t = s.equation.terms();
  CHECK(term_dimension(s.equation, t[0], dims, 3) == to_int_vector({0, 1, -1}));
  CHECK(term_dimension(s.equation, t[1], dims, 3) == to_int_vector({0, 1, -1}));

  DimensionedSystem q = schrodinger(2);
  assign_uniform_variables(q);
  DimMap qd = full_dims(q);
  CHECK(term_dimension(q.equation, q.equation.terms()[0], qd, 3) == to_int_vector({1, 2, -2}));

  // (d^s y/dx^s) x^s has the dimension of y
  for (int s_ord = 0; s_ord <= 3; ++s_ord) {
    DiffPoly p({"x", "y"}, "x", "y");
    p.add_term(Coeff(1), exp_vector({s_ord, s_ord == 0 ? 1 : 0}), s_ord);
    DimMap d{{"x", to_int_vector({0, 0, 1})}, {"y", to_int_vector({0, 1, 0})}};
    CHECK(term_dimension(p, p.terms()[0], d, 3) == d["y"]);
  }
  DimMap missing{{"x", to_int_vector({0, 0, 1})}, {"y", to_int_vector({0, 1, 0})}};
  CHECK_THROWS_WITH(term_dimension(s.equation, t[1], missing, 3), doctest::Contains("'a'"));
}

TEST_CASE("constant dimensions of the quartic example") {
  DimensionedSystem s = example1();
  CHECK(inference_beta(s) == to_int_vector({0, 0, 0}));
  DimMap c = infer_constant_dimensions(s, s.var_dims, inference_beta(s));
  CHECK(c.at("a") == to_int_vector({-3, 3, 6}));
  CHECK(c.at("b") == to_int_vector({-3, 5, 4}));
  CHECK(c.at("c") == to_int_vector({-3, 7, 2}));
  CHECK(c.at("d") == to_int_vector({-4, 12, 0}));
  CHECK(check_homogeneity(s, full_dims(s)) == to_int_vector({0, 0, 0}));
}

TEST_CASE("constant dimensions of the Riccati equation") {
  DimensionedSystem s = riccati();
  CHECK(inference_beta(s) == to_int_vector({0, 1, -1}));
  DimMap c = infer_constant_dimensions(s, s.var_dims, inference_beta(s));
  CHECK(c.at("a") == to_int_vector({0, -1, -1}));
  CHECK(c.at("b") == to_int_vector({0, -1, -2}));
  CHECK(c.at("c") == to_int_vector({0, 0, -2}));
}

TEST_CASE("no constants, one term") {
  DimensionedSystem s;
  s.base_dims = {"L"};
  s.vars = {"x"};
  s.var_dims = {{"x", to_int_vector({1})}};
  s.equation = DiffPoly({"x"});
  term(s.equation, 3, {}, {2});
  CHECK(infer_constant_dimensions(s, s.var_dims, inference_beta(s)).empty());
  CHECK(check_homogeneity(s, s.var_dims) == to_int_vector({2}));
}

TEST_CASE("conflicting forced dimensions are rejected") {
  // a*(y^2 - y0)*y' with y0 a length: a is forced twice
  DimensionedSystem s;
  s.base_dims = {"L", "T"};
  s.vars = {"x", "y"};
  s.consts = {"a", "y0"};
  s.var_dims = {{"x", to_int_vector({0, 1})}, {"y", to_int_vector({1, 0})}};
  s.const_dims = {{"y0", to_int_vector({1, 0})}};
  s.equation = DiffPoly({"x", "y"}, "x", "y");
  term(s.equation, 1, {}, {0, 0}, 2);
  term(s.equation, -1, {{"a", 1}}, {0, 2}, 1);
  term(s.equation, 1, {{"a", 1}, {"y0", 1}}, {0, 0}, 1);
  try {
    infer_constant_dimensions(s, s.var_dims, inference_beta(s));
    FAIL("expected a conflict");
  } catch (const InhomogeneousError& e) {
    std::string msg = e.what();
    CHECK(msg.find("'a'") != std::string::npos);
    CHECK(msg.find("L^-2 T^-1") != std::string::npos);
    CHECK(msg.find("L^-1 T^-1") != std::string::npos);
  }
}

TEST_CASE("Schrodinger homogeneity") {
  DimensionedSystem literal = schrodinger(1);
  auto notes = assign_uniform_variables(literal);
  REQUIRE(notes.size() == 1);
  CHECK(notes[0].find("psi") != std::string::npos);
  CHECK(literal.var_dims.at("psi") == to_int_vector({0, 0, 0}));
  DimMap d = literal.var_dims;
  d.insert(literal.const_dims.begin(), literal.const_dims.end());
  CHECK_THROWS_AS(check_homogeneity(literal, d), InhomogeneousError);

  DimensionedSystem fixed = schrodinger(2);
  assign_uniform_variables(fixed);
  CHECK(check_homogeneity(fixed, full_dims(fixed)) == to_int_vector({1, 2, -2}));
}

TEST_CASE("Riccati groups and reduced equation") {
  DimensionedSystem s = riccati();
  DimMap dims = full_dims(s);
  auto vc = variable_constant_ideal(s, dims);
  CHECK_FALSE(vc.degenerate);
  for (const auto& b : vc.generators) {
    IntVector diff = b.difference();
    CHECK((vc.matrix.transpose() * diff) == IntVector(3));
  }
  GroupSelection sel = select_groups(vc, s);
  CHECK(sel.failures.empty());
  CHECK(sel.reference_consts == std::vector<std::string>{"a", "b"});
  REQUIRE(sel.groups.size() == 3);
  CHECK(to_string(group(sel, "x")) == "X = x*a^-1*b");
  CHECK(to_string(group(sel, "y")) == "Y = y*a^2*b^-1");
  CHECK(to_string(group(sel, "c")) == "R = a^2*b^-2*c");
  for (const auto& g : sel.groups) CHECK(is_dimensionless(g, dims, 3));

  DiffPoly r = nondimensionalize(s, sel.groups);
  DiffPoly expect({"X", "Y"}, "X", "Y");
  term(expect, 1, {}, {0, 0}, 1);
  term(expect, -1, {}, {0, 2});
  term(expect, 1, {}, {1, 2});
  term(expect, -1, {{"R", 1}}, {1, 1});
  CHECK(r == expect);
  CHECK(to_string(r) == "D(Y,X,1) - Y^2 + X*Y^2 - R*X*Y");
}

TEST_CASE("quartic example groups") {
  DimensionedSystem s = example1();
  DimMap dims = full_dims(s);
  auto vc = variable_constant_ideal(s, dims);
  GroupSelection sel = select_groups(vc, s);
  CHECK(sel.failures.empty());
  CHECK(exps(group(sel, "x")) == "x^1 a^2 b^-3 d^1 ");
  CHECK(exps(group(sel, "y")) == "y^1 a^3 b^-4 d^1 ");
  CHECK(exps(group(sel, "c")) == "a^1 b^-2 c^1 ");
  for (const auto& g : sel.groups) CHECK(is_dimensionless(g, dims, 3));

  DiffPoly r = nondimensionalize(s, sel.groups);
  CHECK(to_string(r) == "Y^3 + X*Y^2 + R1*X^2*Y + X^4");

  // paper-style names supplied explicitly
  std::vector<Group> named = sel.groups;
  for (auto& g : named)
    if (g.anchor == "c") g.name = "R";
  named.erase(std::remove_if(named.begin(), named.end(), [](const Group& g) { return g.anchor == "d"; }),
              named.end());
  DiffPoly r2 = nondimensionalize(s, named);
  DiffPoly expect({"X", "Y"});
  term(expect, 1, {}, {0, 3});
  term(expect, 1, {}, {1, 2});
  term(expect, 1, {{"R", 1}}, {2, 1});
  term(expect, 1, {}, {4, 0});
  CHECK(r2 == expect);
}

TEST_CASE("Schrodinger groups and reduced equation") {
  DimensionedSystem s = schrodinger(2);
  assign_uniform_variables(s);
  DimMap dims = full_dims(s);
  GroupSelection sel = select_groups(variable_constant_ideal(s, dims), s);
  CHECK(sel.failures.empty());
  Group gx = group(sel, "x");
  CHECK(exps(gx) == "x^2 m^1 hbar^-1 omega^1 ");
  Group root = root_extract_group(gx, 2);
  CHECK(root.exponent("x") == 1);
  CHECK(root.exponent("m") == make_rational(1, 2));
  CHECK(root.exponent("hbar") == make_rational(-1, 2));
  CHECK(is_dimensionless(root, dims, 3));
  CHECK(to_string(group(sel, "E")) == "R = hbar^-1*omega^-1*E");
  CHECK(to_string(group(sel, "psi")) == "Psi = psi");

  std::vector<Group> named = sel.groups;
  for (auto& g : named)
    if (g.anchor == "E") g.name = "Et";
  DiffPoly r = nondimensionalize(s, named);
  DiffPoly expect({"X", "Psi"}, "X", "Psi");
  term(expect, -1, {}, {0, 0}, 2);
  term(expect, 1, {}, {2, 1});
  term(expect, -2, {{"Et", 1}}, {0, 1});
  CHECK(r == expect);
}

TEST_CASE("root extraction") {
  Group g{"G", "x", Group::Kind::VariableScaling, {{"x", 3}, {"a", 2}}};
  CHECK_THROWS_AS(root_extract_group(g, 2), Error);
  Group same = root_extract_group(g, 1);
  CHECK(same.exponents == g.exponents);
}

TEST_CASE("insufficient constant groups") {
  DimensionedSystem s = riccati();
  DimMap dims = full_dims(s);
  GroupSelection sel = select_groups(variable_constant_ideal(s, dims), s);
  std::vector<Group> no_const;
  for (const auto& g : sel.groups)
    if (g.kind == Group::Kind::VariableScaling) no_const.push_back(g);
  CHECK_THROWS_WITH(nondimensionalize(s, no_const), doctest::Contains("insufficient"));
}

TEST_CASE("degenerate variable-constant ideal") {
  DimensionedSystem s;
  s.base_dims = {"L"};
  s.vars = {"x", "y"};
  s.var_dims = {{"x", to_int_vector({0})}, {"y", to_int_vector({0})}};
  s.equation = DiffPoly({"x", "y"});
  term(s.equation, 1, {}, {1, 0});
  term(s.equation, -1, {}, {0, 1});
  auto vc = variable_constant_ideal(s, s.var_dims);
  CHECK(vc.degenerate);
  REQUIRE(vc.generators.size() == 2);
}
