#include "toricnp/polytope.hpp"

#include <algorithm>
#include <map>

#include "toricnp/error.hpp"

namespace toricnp {

namespace {

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Differences p_i - p_0 as the columns of an n x (k-1) matrix.
IntMatrix difference_columns(const std::vector<Point>& pts) {
  std::vector<IntVector> cols;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    IntVector d(pts[0].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
    cols.push_back(d);
  }
  return IntMatrix::from_columns(pts[0].size(), cols);
}

std::size_t affine_rank(const std::vector<Point>& pts) {
  if (pts.size() <= 1) return 0;
  return rank(difference_columns(pts));
}

// Calls f on every k-subset of {0..n-1}, in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

IntVector facet_normal(const std::vector<Point>& vertices) {
  if (vertices.empty()) fail(ErrorKind::Domain, "facet does not span a hyperplane");
  const std::size_t n = vertices[0].size();
  if (vertices.size() < n || affine_rank(vertices) != n - 1)
    fail(ErrorKind::Domain, "facet does not span a hyperplane");
  IntMatrix k = integer_kernel(difference_columns(vertices));
  if (k.cols() != 1) fail(ErrorKind::Invariant, "hyperplane normal is not unique");
  return primitive(k.column(0));
}

std::vector<Rational> substitution_exponents(const IntVector& m) {
  if (m.empty() || m[0] == 0)
    fail(ErrorKind::Domain, "facet normal has zero first component; choose a different input variable");
  std::vector<Rational> r;
  for (std::size_t j = 1; j < m.size(); ++j) r.push_back(make_rational(m[j], m[0]));
  return r;
}

LatticePolytope convex_hull(std::vector<Point> input) {
  LatticePolytope p;
  if (input.empty()) fail(ErrorKind::Domain, "empty point set has no hull");
  p.ambient_dim = input[0].size();
  for (auto& pt : input) {
    if (pt.size() != p.ambient_dim) fail(ErrorKind::Domain, "points of different dimension");
    if (std::find(p.points.begin(), p.points.end(), pt) == p.points.end()) p.points.push_back(std::move(pt));
  }
  const std::size_t n = p.ambient_dim;
  p.affine_dim = affine_rank(p.points);

  if (p.affine_dim < n || n == 0) {
    // lower-dimensional: vertices are the points outside the hull of the others
    // only in the trivial cases we can decide without facets
    if (p.points.size() <= p.affine_dim + 1) {
      for (std::size_t i = 0; i < p.points.size(); ++i) p.vertices.push_back(i);
    } else if (p.affine_dim == 1) {
      // collinear: the two extreme points along the line
      const Point& a = p.points[0];
      IntVector dir;
      for (const auto& q : p.points)
        if (q != a) {
          dir.resize(n);
          for (std::size_t j = 0; j < n; ++j) dir[j] = q[j] - a[j];
          break;
        }
      auto lo = std::min_element(p.points.begin(), p.points.end(),
                                 [&](const Point& u, const Point& v) { return dot(u, dir) < dot(v, dir); });
      auto hi = std::max_element(p.points.begin(), p.points.end(),
                                 [&](const Point& u, const Point& v) { return dot(u, dir) < dot(v, dir); });
      p.vertices = {std::size_t(lo - p.points.begin()), std::size_t(hi - p.points.begin())};
      std::sort(p.vertices.begin(), p.vertices.end());
    }
    return p;
  }

  std::map<std::pair<IntVector, Integer>, bool> seen;
  for_each_subset(p.points.size(), n, [&](const std::vector<std::size_t>& idx) {
    std::vector<Point> sub;
    for (auto i : idx) sub.push_back(p.points[i]);
    if (affine_rank(sub) != n - 1) return;
    IntVector m = facet_normal(sub);
    Integer h = dot(m, sub[0]);
    bool above = false, below = false;
    for (const auto& q : p.points) {
      Integer v = dot(m, q);
      above = above || v > h;
      below = below || v < h;
    }
    if (above && below) return;
    if (below) {
      for (auto& x : m) x = -x;
      h = -h;
    }
    if (seen.count({m, h})) return;
    seen[{m, h}] = true;
    Facet f{{}, m, h};
    for (std::size_t i = 0; i < p.points.size(); ++i)
      if (dot(m, p.points[i]) == h) f.points.push_back(i);
    p.facets.push_back(std::move(f));
  });
  std::sort(p.facets.begin(), p.facets.end(), [](const Facet& a, const Facet& b) { return a.points < b.points; });

  // a point is a vertex when the normals of its facets have full rank
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    std::vector<IntVector> normals;
    for (const auto& f : p.facets)
      if (std::binary_search(f.points.begin(), f.points.end(), i)) normals.push_back(f.normal);
    if (!normals.empty() && rank(IntMatrix::from_columns(n, normals)) == n) p.vertices.push_back(i);
  }
  return p;
}

LatticePolytope newton_polytope(const Poly& f) {
  if (f.is_zero()) fail(ErrorKind::Domain, "zero polynomial has no Newton polytope");
  std::vector<Point> pts;
  for (const auto& e : support(f)) {
    if (!is_integral(e)) fail(ErrorKind::Unsupported, "Newton polytope needs integer exponents");
    Point p;
    for (const auto& q : e) p.push_back(q.get_num());
    pts.push_back(p);
  }
  return convex_hull(std::move(pts));
}

std::vector<Point> kruskal_points(const DiffPoly& eq) {
  std::vector<Point> out;
  for (const auto& t : eq.terms()) {
    if (!is_integral(t.exps)) fail(ErrorKind::Unsupported, "Kruskal-Newton points need integer exponents");
    Point p;
    for (const auto& q : t.exps) p.push_back(q.get_num());
    if (t.order > 0) {
      p[eq.var_index(*eq.independent())] -= t.order;
      p[eq.var_index(*eq.dependent())] += 1;
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<DistinguishedFacet> distinguished_facets(const LatticePolytope& p) {
  std::vector<DistinguishedFacet> out;
  for (std::size_t fi = 0; fi < p.facets.size(); ++fi) {
    const Facet& f = p.facets[fi];
    if (f.points.size() + 1 != p.points.size()) continue;
    DistinguishedFacet d;
    d.facet = fi;
    for (std::size_t i = 0; i < p.points.size(); ++i)
      if (!std::binary_search(f.points.begin(), f.points.end(), i)) d.off_point = i;
    d.normal = f.normal;
    d.offset = f.offset;
    d.raw_gap = dot(f.normal, p.points[d.off_point]) - f.offset;
    if (d.normal[0] == 0) {
      d.reason = "normal has zero first component; the gap in the input variable is undefined";
    } else {
      d.gap = make_rational(d.raw_gap, d.normal[0]);
      if (d.normal[0] < 0) {
        for (auto& x : d.normal) x = -x;
        d.offset = -d.offset;
        d.raw_gap = -d.raw_gap;
      }
      d.exponents = substitution_exponents(d.normal);
      if (*d.gap > 0)
        d.dominant = true;
      else
        d.reason = "off-facet term is not of higher order as the input variable tends to zero";
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace toricnp
