#include "doctest.h"
#include "toricnp/error.hpp"
#include "toricnp/exactmath.hpp"

using namespace toricnp;

namespace {

// Matrix of the five-variable, three-dimension example.
IntMatrix five_by_three() {
  return {{1, 1, -2}, {0, 1, 0}, {0, 1, 1}, {1, 0, 3}, {1, -1, -1}};
}

bool is_column_hermite(const IntMatrix& h) {
  std::size_t col = 0;
  for (std::size_t i = 0; i < h.rows() && col < h.cols(); ++i) {
    for (std::size_t j = col + 1; j < h.cols(); ++j)
      if (h(i, j) != 0) return false;
    if (h(i, col) == 0) continue;
    if (h(i, col) < 0) return false;
    for (std::size_t j = 0; j < col; ++j)
      if (h(i, j) < 0 || h(i, j) >= h(i, col)) return false;
    ++col;
  }
  for (std::size_t j = col; j < h.cols(); ++j)
    for (std::size_t i = 0; i < h.rows(); ++i)
      if (h(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("hermite_normal_form identity and zero") {
  auto [h, u] = hermite_normal_form(IntMatrix::identity(3));
  CHECK(h == IntMatrix::identity(3));
  CHECK(u == IntMatrix::identity(3));

  auto [hz, uz] = hermite_normal_form(IntMatrix(2, 2));
  CHECK(hz.is_zero());
  CHECK(uz == IntMatrix::identity(2));
}

TEST_CASE("hermite_normal_form on [[2,4],[1,3]]") {
  IntMatrix m{{2, 4}, {1, 3}};
  auto [h, u] = hermite_normal_form(m);
  CHECK(m * u == h);
  CHECK(abs(determinant(u)) == 1);
  CHECK(is_column_hermite(h));
  // det M = 2, so the pivots multiply to 2
  CHECK(h(0, 0) * h(1, 1) == 2);
}

TEST_CASE("hermite_normal_form is idempotent") {
  IntMatrix m{{3, 5, 7}, {2, -4, 6}, {0, 1, 9}};
  auto h = hermite_normal_form(m).H;
  auto again = hermite_normal_form(h);
  CHECK(again.H == h);
  CHECK(is_column_hermite(h));
}

TEST_CASE("integer_kernel of the 5x3 example") {
  IntMatrix a = five_by_three();
  IntMatrix k = integer_kernel(a);
  CHECK(k.cols() == 2);
  CHECK((a.transpose() * k).is_zero());
  CHECK(rank(k) + rank(a) == a.rows());
  CHECK(in_column_lattice(k, to_int_vector({0, 3, -4, 1, -1})));
  for (std::size_t j = 0; j < k.cols(); ++j) {
    auto c = k.column(j);
    CHECK(primitive(c) == c);
  }
}

TEST_CASE("integer_kernel small cases") {
  CHECK(integer_kernel(IntMatrix::identity(2)).cols() == 0);
  IntMatrix k = integer_kernel(IntMatrix{{1}, {1}});
  REQUIRE(k.cols() == 1);
  CHECK(k.column(0) == to_int_vector({1, -1}));
}

TEST_CASE("primitive") {
  CHECK(primitive(to_int_vector({2, 4, -2})) == to_int_vector({1, 2, -1}));
  CHECK(primitive(to_int_vector({0, -3, 0})) == to_int_vector({0, 1, 0}));
  CHECK(primitive(to_int_vector({5, 7})) == to_int_vector({5, 7}));
  CHECK_THROWS_WITH_AS(primitive(to_int_vector({0, 0})), "zero vector has no primitive form", Error);
  // primitive(c*v) == primitive(v)
  for (long c : {-6L, -1L, 3L, 10L}) {
    IntVector v = to_int_vector({4, -6, 10});
    IntVector cv = v;
    for (auto& x : cv) x *= c;
    CHECK(primitive(cv) == primitive(v));
  }
}

TEST_CASE("lattice membership rejects non-members") {
  IntMatrix k = integer_kernel(five_by_three());
  CHECK_FALSE(in_column_lattice(k, to_int_vector({1, 0, 0, 0, 0})));
  IntMatrix even = IntMatrix::from_columns(2, {to_int_vector({2, 0}), to_int_vector({0, 2})});
  CHECK_FALSE(in_column_lattice(even, to_int_vector({1, 2})));
  CHECK(in_column_lattice(even, to_int_vector({4, -2})));
}

TEST_CASE("rational helpers") {
  CHECK(parse_rational("6/-4") == make_rational(-3, 2));
  CHECK(to_string(parse_rational("10/4")) == "5/2");
  CHECK_THROWS_AS(make_rational(1, 0), Error);
  auto x = solve_rational({{1, 1}, {1, -1}}, {3, 1});
  REQUIRE(x);
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 1);
  CHECK_FALSE(solve_rational({{1, 1}, {2, 2}}, {1, 3}));
}

TEST_CASE("lll_reduce shortens a skewed kernel basis") {
  // kernel of A^T with A = rows (-1,-1,-3) (2,1,2) (1,-3,0) (-1,1,3) (-3,-2,1)
  IntMatrix a{{-1, -1, -3}, {2, 1, 2}, {1, -3, 0}, {-1, 1, 3}, {-3, -2, 1}};
  IntMatrix k = integer_kernel(a);
  IntMatrix r = lll_reduce(k);
  REQUIRE(r.cols() == k.cols());
  const IntMatrix at = a.transpose();
  Integer longest = 0, longest_before = 0;
  for (std::size_t j = 0; j < r.cols(); ++j) {
    IntVector c = r.column(j), kc = k.column(j);
    CHECK((at * std::span<const Integer>(c)) == IntVector(3, 0));
    CHECK(in_column_lattice(k, c));
    CHECK(in_column_lattice(r, kc));
    for (const auto& x : c) longest = std::max<Integer>(longest, abs(x));
    for (const auto& x : kc) longest_before = std::max<Integer>(longest_before, abs(x));
  }
  CHECK(longest < longest_before);
  Integer n0 = 0, n1 = 0;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    n0 += r(i, 0) * r(i, 0);
    n1 += r(i, 1) * r(i, 1);
  }
  CHECK(n0 <= n1);
  CHECK(lll_reduce(IntMatrix(3, 0)).cols() == 0);
}
