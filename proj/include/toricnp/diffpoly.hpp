#pragma once

// Polynomial differential forms: sums of terms
//   coeff * prod_i v_i^{e_i} * d^s(dep)/d(indep)^s
// linear in the derivative factor. With s = 0 for every term this is an
// ordinary (Laurent, possibly fractional-exponent) polynomial.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricnp/poly.hpp"

namespace toricnp {

struct DiffTerm {
  Coeff coeff;
  ExpVector exps;
  int order = 0;  // derivative order s; 0 means no derivative factor
};

class DiffPoly {
 public:
  DiffPoly() = default;
  DiffPoly(std::vector<std::string> vars, std::optional<std::string> independent = std::nullopt,
           std::optional<std::string> dependent = std::nullopt);

  static DiffPoly from_poly(const Poly& f);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t var_index(const std::string& name) const;
  const std::optional<std::string>& independent() const { return independent_; }
  const std::optional<std::string>& dependent() const { return dependent_; }
  void set_derivative_pair(const std::string& dependent, const std::string& independent);

  /// Terms in first-insertion order; like terms (same exponents, parameters
  /// and order) are merged, zero results dropped.
  const std::vector<DiffTerm>& terms() const { return terms_; }
  void add_term(const Coeff& c, const ExpVector& exps, int order = 0);
  bool is_zero() const { return terms_.empty(); }
  bool has_derivatives() const;
  int max_order() const;

  /// Derivative-free form. Throws when a derivative factor is present.
  Poly to_poly() const;
  DiffPoly evaluate_params(const std::map<std::string, Rational>& values) const;
  DiffPoly operator-() const;
  DiffPoly scaled(const Coeff& c) const;
  /// Term-multiset equality (insertion order ignored).
  friend bool operator==(const DiffPoly& a, const DiffPoly& b);

 private:
  std::vector<std::string> vars_;
  std::optional<std::string> independent_;
  std::optional<std::string> dependent_;
  std::vector<DiffTerm> terms_;
};

/// Renders a term in the equation DSL (e.g. "2*s^-1*eps^(3/2)*D(y,eps,1)").
std::string term_to_string(const DiffPoly& p, const DiffTerm& t, bool with_sign = true);
/// Renders all terms in insertion order, DSL syntax; "0" when empty.
std::string to_string(const DiffPoly& p);

}  // namespace toricnp
