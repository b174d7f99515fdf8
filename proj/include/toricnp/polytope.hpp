#pragma once

// Newton polytopes, Kruskal-Newton point sets, facets and distinguished
// facets with their substitution exponents and gap.

#include <optional>
#include <string>
#include <vector>

#include "toricnp/diffpoly.hpp"
#include "toricnp/exactmath.hpp"
#include "toricnp/poly.hpp"

namespace toricnp {

using Point = IntVector;

struct Facet {
  std::vector<std::size_t> points;  // indices of every support point on the facet, ascending
  IntVector normal;                 // primitive, oriented inward: normal . p >= offset on the polytope
  Integer offset;
};

struct LatticePolytope {
  std::vector<Point> points;  // deduplicated support, first-occurrence order
  std::vector<std::size_t> vertices;
  std::vector<Facet> facets;  // sorted by point index list; empty when not full-dimensional
  std::size_t ambient_dim = 0;
  std::size_t affine_dim = 0;
};

LatticePolytope convex_hull(std::vector<Point> points);
/// Hull of the support of f. Exponents must be integers.
LatticePolytope newton_polytope(const Poly& f);

/// One point per term, coordinates in variable order: a derivative factor
/// d^s y/dx^s moves the x coordinate by -s and the y coordinate by +1.
std::vector<Point> kruskal_points(const DiffPoly& eq);

/// Primitive normal (first nonzero entry positive) of the hyperplane through
/// `vertices`.
IntVector facet_normal(const std::vector<Point>& vertices);

/// r_j = m_j / m_1 for j = 2..d.
std::vector<Rational> substitution_exponents(const IntVector& m);

struct DistinguishedFacet {
  std::size_t facet = 0;      // index into LatticePolytope::facets
  std::size_t off_point = 0;  // index into LatticePolytope::points
  IntVector normal;           // m_1 > 0 when m_1 != 0
  Integer offset;
  Integer raw_gap;            // normal . off_point - offset
  std::optional<Rational> gap;               // c = raw_gap / m_1
  std::vector<Rational> exponents;           // r_j, empty when m_1 = 0
  bool dominant = false;
  std::string reason;                        // why a facet is not dominant
};

std::vector<DistinguishedFacet> distinguished_facets(const LatticePolytope& p);

}  // namespace toricnp
