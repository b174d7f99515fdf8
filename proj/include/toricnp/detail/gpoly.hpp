#pragma once

// Dense-exponent sparse polynomials used inside the Groebner engine: small
// integer exponents, rational coefficients, terms sorted by decreasing order.

#include <vector>

#include "toricnp/poly.hpp"

namespace toricnp::detail {

using Exp = std::vector<long>;

struct GTerm {
  Exp exp;
  Rational coef;
};

struct GPoly {
  std::vector<GTerm> terms;  // strictly decreasing under the active order

  bool is_zero() const { return terms.empty(); }
  const GTerm& lead() const { return terms.front(); }
};

GPoly from_poly(const Poly& f, const MonomialOrder& ord);
Poly to_poly(const GPoly& f, const std::vector<std::string>& vars);

bool divides(const Exp& a, const Exp& b);
Exp lcm(const Exp& a, const Exp& b);
bool coprime(const Exp& a, const Exp& b);

/// f - c * x^shift * g
GPoly sub_scaled(const GPoly& f, const Rational& c, const Exp& shift, const GPoly& g, const MonomialOrder& ord);

/// Fully reduced remainder of f modulo g.
GPoly normal_form(GPoly f, const std::vector<GPoly>& g, const MonomialOrder& ord);

void make_monic(GPoly& f);

}  // namespace toricnp::detail
