#pragma once

// Differential extension: Kruskal-Newton facet split, power-law rescaling of
// the independent variable, power-law facet solutions, the restricted
// iteration and the perturbation equation for external handling.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricnp/diffpoly.hpp"
#include "toricnp/polytope.hpp"
#include "toricnp/puiseux.hpp"

namespace toricnp {

/// Replaces the independent variable x by s * u^r. When u is already a
/// variable of eq the two merge; otherwise x is renamed to u. Orders <= 2.
DiffPoly scale_independent(const DiffPoly& eq, const Coeff& s, const Rational& r, const std::string& u);

/// Algebraic substitution var = s * target^r for a variable that is neither
/// independent nor dependent; var is dropped.
DiffPoly substitute_variable(const DiffPoly& eq, const std::string& var, const Coeff& s, const Rational& r,
                             const std::string& target);

struct FacetSplitDiff {
  DiffPoly Ftilde;  // facet terms
  DiffPoly Gtilde;  // negated off-facet terms: eq = Ftilde - Gtilde
  std::optional<Rational> gap;
};

FacetSplitDiff facet_split_diff(const DiffPoly& eq, const DistinguishedFacet& df);

/// Facet split rewritten in the input variable x_1: ancillary variables
/// x_j = s_j x_1^{r_j} (the independent one through the chain rule). The
/// scale symbols are named s (one ancillary) or s2, s3, ...
struct FacetOde {
  FacetSplitDiff split;        // in the original variables
  FacetSplitDiff scaled;       // after substitution
  std::vector<std::pair<std::string, std::string>> substitutions;  // var -> "s*eps^(1/2)"
};

FacetOde facet_ode(const DiffPoly& eq, const DistinguishedFacet& df);

struct PowerLawSolution {
  enum class Status { Unique, Roots, Family, Refused };
  Status status = Status::Refused;
  Rational rho;
  Poly sigma_num;                   // parameters only; sigma = num / den (Unique)
  Poly sigma_den;
  std::vector<Rational> sigma_roots;  // numeric roots (Roots)
  std::vector<Rational> rho_roots;    // sigma free, these rho (Family)
  std::string reason;                 // Refused
};

/// Substitutes y = sigma * u^rho into a two-variable facet equation.
PowerLawSolution powerlaw_facet_solution(const DiffPoly& Ftilde);

/// Exact series of eq evaluated at y = T (parameters must be numeric).
PuiseuxSeries substitute_series_diff(const DiffPoly& eq, const PuiseuxSeries& T);

/// Starts at sigma * u^rho and adds N corrections; each is the lowest-order
/// term solving the linearised equation on a power ansatz.
PuiseuxSeries np_expand_diff(const DiffPoly& eq, const Rational& sigma, const Rational& rho, int N,
                             const std::map<std::string, Rational>& params = {});

std::optional<Rational> residual_order_diff(const DiffPoly& eq, const PuiseuxSeries& s, const Rational& bound,
                                            const std::map<std::string, Rational>& params = {});

struct PerturbationTrial {
  std::string y0 = "y0";
  std::string z = "z";
  /// y0 = coeff * x^exponent instead of an opaque function
  std::optional<std::pair<Coeff, Rational>> power_law;
  /// known corrections: y = y0 * (1 + known + z), polynomial in the independent variable
  std::optional<Poly> known;
};

/// The exact equation for z after y = y0 (1 + known + z). An opaque y0 is
/// carried as variables y0, y0_x, y0_xx (derivative markers).
DiffPoly emit_perturbation_equation(const DiffPoly& eq, const PerturbationTrial& trial,
                                    const std::string& dependent = "", const std::string& independent = "");

}  // namespace toricnp
