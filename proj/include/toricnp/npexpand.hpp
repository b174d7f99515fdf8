#pragma once

// Newton-Puiseux expansion of an algebraic equation f(x_1, ..., x_d) = 0 for
// x_d in fractional powers of x_1, driven by a distinguished facet.

#include <optional>
#include <string>
#include <vector>

#include "toricnp/polytope.hpp"
#include "toricnp/poly.hpp"
#include "toricnp/puiseux.hpp"

namespace toricnp {

/// x_j = s_j * x_1^{r_j} for the ancillary variables j = 2..d-1.
struct AncillarySubstitution {
  std::vector<Rational> values;     // s_2 .. s_{d-1}
  std::vector<Rational> exponents;  // r_2 .. r_{d-1}
};

struct OffFacetTerm {
  Rational coeff;  // already negated: G = sum coeff * s^s_exp * x1^shift
  Rational s_exp;
  Rational shift;  // exponent of x_1 relative to the facet level
};

struct FacetData {
  Poly F;  // univariate in "s"
  std::vector<OffFacetTerm> G;
  Rational gap;
  Rational lead_exponent;  // r_d
  Rational facet_level;    // c_1: x_1 exponent shared by the facet terms
  AncillarySubstitution ancillary;
};

/// `ancillary` gives s_2..s_{d-1}; every value must be nonzero.
FacetData facet_data(const Poly& f, const DistinguishedFacet& df, const std::vector<Rational>& ancillary = {});

struct RootResult {
  std::vector<std::pair<Rational, int>> roots;  // nonzero rational roots with multiplicity
  Poly residual;                                // factor without rational roots (constant when none)
};

/// Rational roots of a univariate polynomial by the rational root theorem
/// and exact deflation. The root s = 0 is not reported.
RootResult facet_roots(const Poly& F);

/// Series for x_d in x_1 starting at root * x_1^{r_d}, with N correction
/// terms. Each step adds the lowest-order term of -g(T) / g_y(T).
PuiseuxSeries np_expand(const Poly& f, const DistinguishedFacet& df, const Rational& root, int N,
                        const std::vector<Rational>& ancillary = {});

/// f(x_1, s_j x_1^{r_j}, T) as an exact series in x_1 (T must be exact).
PuiseuxSeries substitute_series(const Poly& f, const PuiseuxSeries& T, const AncillarySubstitution& anc);

struct ResidualOrder {
  std::optional<Rational> order;  // empty: no nonzero coefficient below the bound
  Rational bound;
};

ResidualOrder residual_order(const Poly& f, const PuiseuxSeries& s, const Rational& bound,
                             const AncillarySubstitution& anc = {});

std::string to_string(const ResidualOrder& r, const std::string& var);

}  // namespace toricnp
