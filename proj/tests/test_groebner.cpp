#include <algorithm>
#include <random>

#include "doctest.h"
#include "toricnp/error.hpp"
#include "toricnp/groebner.hpp"

using namespace toricnp;

namespace {

Poly mono(const std::vector<std::string>& vars, Rational c, std::initializer_list<long> e) {
  return Poly::monomial(vars, Coeff(std::move(c)), exp_vector(e));
}

bool same_ideal(const Ideal& a, const Ideal& b) {
  for (const auto& g : a.generators)
    if (!ideal_membership(g, b)) return false;
  for (const auto& g : b.generators)
    if (!ideal_membership(g, a)) return false;
  return true;
}

const std::vector<std::string> X5{"x1", "x2", "x3", "x4", "x5"};

IntMatrix five_by_three() { return {{1, 1, -2}, {0, 1, 0}, {0, 1, 1}, {1, 0, 3}, {1, -1, -1}}; }

// The three binomials listed for the 5x3 example.
std::vector<Poly> printed_generators() {
  return {mono(X5, -1, {0, 0, 4, 0, 1}) + mono(X5, 1, {0, 3, 0, 1, 0}),
          mono(X5, -1, {0, 0, 3, 0, 2}) + mono(X5, 1, {1, 0, 0, 1, 0}),
          mono(X5, -1, {0, 3, 1, 0, 1}) + mono(X5, 1, {1, 0, 2, 0, 0})};
}

}  // namespace

TEST_CASE("groebner_basis small cases") {
  const std::vector<std::string> x{"x"};
  Ideal g = groebner_basis({mono(x, 1, {2}) - mono(x, 1, {0}), mono(x, 1, {1}) - mono(x, 1, {0})},
                           MonomialOrder::lex());
  REQUIRE(g.generators.size() == 1);
  CHECK(g.generators[0] == mono(x, 1, {1}) - mono(x, 1, {0}));

  const std::vector<std::string> xy{"x", "y"};
  Ideal h = groebner_basis({mono(xy, 1, {1, 1}) - mono(xy, 1, {0, 0}), mono(xy, 1, {0, 2}) - mono(xy, 1, {0, 0})},
                           MonomialOrder::lex());
  REQUIRE(h.generators.size() == 2);
  CHECK(h.generators[0] == mono(xy, 1, {1, 0}) - mono(xy, 1, {0, 1}));
  CHECK(h.generators[1] == mono(xy, 1, {0, 2}) - mono(xy, 1, {0, 0}));

  CHECK(groebner_basis(std::vector<Poly>{}, MonomialOrder::lex()).generators.empty());
}

TEST_CASE("groebner_basis is independent of generator order") {
  const std::vector<std::string> v{"x", "y", "z"};
  std::vector<Poly> gens{mono(v, 1, {2, 0, 0}) - mono(v, 1, {0, 1, 1}),
                         mono(v, 2, {1, 1, 0}) + mono(v, -3, {0, 0, 2}) + mono(v, 1, {0, 0, 0}),
                         mono(v, 1, {0, 2, 1}) - mono(v, 1, {1, 0, 0})};
  Ideal ref = groebner_basis(gens, MonomialOrder::grevlex());
  std::sort(gens.begin(), gens.end(), [](const Poly& a, const Poly& b) { return to_string(a) < to_string(b); });
  do {
    CHECK(groebner_basis(gens, MonomialOrder::grevlex()).generators == ref.generators);
  } while (std::next_permutation(gens.begin(), gens.end(),
                                 [](const Poly& a, const Poly& b) { return to_string(a) < to_string(b); }));
}

TEST_CASE("eliminate") {
  const std::vector<std::string> v{"z", "x", "y"};
  Ideal i{v, {mono(v, 1, {0, 1, 0}) - mono(v, 1, {1, 0, 0}), mono(v, 1, {0, 0, 1}) - mono(v, 1, {2, 0, 0})}};
  Ideal e = eliminate(i, {"z"});
  REQUIRE(e.generators.size() == 1);
  const std::vector<std::string> xy{"x", "y"};
  Poly parabola = mono(xy, 1, {0, 1}) - mono(xy, 1, {2, 0});
  CHECK(ideal_membership(parabola, e));
  CHECK(ideal_membership(e.generators[0], groebner_basis({parabola}, MonomialOrder::grevlex())));
  for (const auto& g : e.generators) CHECK(g.vars() == xy);

  Ideal none = eliminate(i, {});
  CHECK(none.generators == groebner_basis(i.generators, MonomialOrder::grevlex()).generators);

  Ideal all = eliminate(Ideal{xy, {mono(xy, 1, {1, 0}), mono(xy, 1, {0, 1}) - mono(xy, 1, {0, 0})}}, xy);
  CHECK(all.generators.empty());
}

TEST_CASE("saturate") {
  const std::vector<std::string> xy{"x", "y"};
  Ideal i = groebner_basis({mono(xy, 1, {1, 1})}, MonomialOrder::grevlex());
  Ideal s = saturate(i, exp_vector({1, 0}));
  REQUIRE(s.generators.size() == 1);
  CHECK(s.generators[0] == mono(xy, 1, {0, 1}));

  Ideal one = saturate(i, exp_vector({0, 0}));
  CHECK(one.generators == i.generators);

  Ideal s2 = saturate(s, exp_vector({1, 0}));
  CHECK(same_ideal(s, s2));
}

TEST_CASE("toric ideal of the 5x3 example versus the printed generators") {
  auto bins = toric_ideal(five_by_three(), X5);
  Ideal computed = groebner_basis(binomial_ideal(bins, X5).generators, MonomialOrder::grevlex());
  Ideal printed = groebner_basis(printed_generators(), MonomialOrder::grevlex());
  for (const auto& p : printed_generators()) CHECK(ideal_membership(p, computed));
  // The printed list is not saturated: x2^3*x5 - x1*x3 is a toric element
  // (the third printed generator is x3 times it) but not in their span.
  Poly missing = mono(X5, 1, {0, 3, 0, 0, 1}) - mono(X5, 1, {1, 0, 1, 0, 0});
  CHECK(ideal_membership(missing, computed));
  CHECK_FALSE(ideal_membership(missing, printed));
  Ideal printed_sat = saturate(printed, ExpVector(5, Rational(1)));
  for (const auto& b : bins) CHECK(ideal_membership(b.to_poly(X5), printed_sat));
  for (const auto& g : printed_sat.generators) CHECK(ideal_membership(g, computed));
  IntMatrix at = five_by_three().transpose();
  for (const auto& b : bins) CHECK((at * b.difference()) == IntVector(3));
  // Lattice basis columns lie in the toric ideal.
  IntMatrix k = integer_kernel(five_by_three());
  for (std::size_t j = 0; j < k.cols(); ++j) {
    Binomial b{IntVector(5), IntVector(5)};
    for (std::size_t i = 0; i < 5; ++i) (k(i, j) > 0 ? b.vplus : b.vminus)[i] = abs(k(i, j));
    CHECK(ideal_membership(b.to_poly(X5), computed));
  }
  CHECK_FALSE(ideal_membership(Poly::constant(X5, Coeff(1)), computed));
}

TEST_CASE("toric_ideal trivial cases") {
  CHECK(toric_ideal(IntMatrix::identity(2), {"a", "b"}).empty());
  auto b = toric_ideal(IntMatrix{{1}, {1}}, {"a", "b"});
  REQUIRE(b.size() == 1);
  CHECK(b[0].difference() == to_int_vector({1, -1}));
}

TEST_CASE("kernel route and elimination route agree") {
  std::vector<IntMatrix> cases{five_by_three(), IntMatrix{{0, 1}, {1, 0}, {-1, -1}, {-1, -2}, {0, -2}},
                               IntMatrix{{1, -3, 0}, {1, -1, -2}, {-3, 3, 6}, {-3, 5, 4}},
                               IntMatrix{{-1, -1, -3}, {2, 1, 2}, {1, -3, 0}, {-1, 1, 3}, {-3, -2, 1}}};
  for (const auto& a : cases) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < a.rows(); ++i) names.push_back("v" + std::to_string(i));
    Ideal k = groebner_basis(binomial_ideal(toric_ideal(a, names), names).generators, MonomialOrder::grevlex());
    Ideal e = groebner_basis(binomial_ideal(toric_ideal_by_elimination(a, names), names).generators,
                             MonomialOrder::grevlex());
    CHECK(k.generators == e.generators);
  }
}

TEST_CASE("ideal membership") {
  const std::vector<std::string> x{"x"};
  Ideal i = groebner_basis({mono(x, 1, {1})}, MonomialOrder::grevlex());
  CHECK(ideal_membership(mono(x, 1, {1}), i));
  CHECK_FALSE(ideal_membership(mono(x, 1, {0}), i));
}

TEST_CASE("engine rejects parameters and Laurent input") {
  const std::vector<std::string> x{"x"};
  Poly p = Poly::monomial(x, Coeff::param("R"), exp_vector({1}));
  CHECK_THROWS_AS(groebner_basis({p}, MonomialOrder::grevlex()), Error);
  CHECK_THROWS_AS(groebner_basis({mono(x, 1, {-1})}, MonomialOrder::grevlex()), Error);
}
