#pragma once

// Buchberger Groebner bases, elimination, saturation and toric ideals.

#include <string>
#include <vector>

#include "toricnp/exactmath.hpp"
#include "toricnp/poly.hpp"

namespace toricnp {

/// x^vplus - x^vminus with disjoint non-negative exponent supports.
struct Binomial {
  IntVector vplus;
  IntVector vminus;

  IntVector difference() const;
  Poly to_poly(const std::vector<std::string>& vars) const;
  friend bool operator==(const Binomial&, const Binomial&) = default;
};

std::string to_string(const Binomial& b, const std::vector<std::string>& vars);

struct Ideal {
  std::vector<std::string> vars;
  std::vector<Poly> generators;
  MonomialOrder order = MonomialOrder::grevlex();
  bool reduced = false;  // generators form the reduced Groebner basis under `order`
};

/// Reduced Groebner basis (monic, inter-reduced, sorted by decreasing leading
/// monomial). Generators must share an indeterminate list and have
/// non-negative integer exponents and no parameters.
Ideal groebner_basis(const std::vector<Poly>& gens, const MonomialOrder& ord);
Ideal groebner_basis(const std::vector<std::string>& vars, const std::vector<Poly>& gens, const MonomialOrder& ord);

/// I intersected with the ring of the indeterminates not in `first_block`.
/// The result is the reduced basis under grevlex on the remaining variables.
Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& first_block);

/// (I : m^inf) via a fresh indeterminate t, t*m - 1 adjoined, t eliminated.
Ideal saturate(const Ideal& ideal, const ExpVector& m);

bool ideal_membership(const Poly& f, const Ideal& ideal);

/// Toric ideal of the d x k matrix A (row i = exponents of variable i):
/// lattice ideal of integer_kernel(A) saturated by the product of all
/// variables.
std::vector<Binomial> toric_ideal(const IntMatrix& a, const std::vector<std::string>& names);

/// Same ideal via eliminating dimension indeterminates z_j (plus inverse
/// indeterminates w_j with z_j*w_j - 1) from x_i - z^{a_i}.
std::vector<Binomial> toric_ideal_by_elimination(const IntMatrix& a, const std::vector<std::string>& names);

Ideal binomial_ideal(const std::vector<Binomial>& gens, const std::vector<std::string>& names);

/// Reads binomials out of a basis whose elements are all of the form
/// x^u - x^v. Throws Invariant otherwise.
std::vector<Binomial> to_binomials(const Ideal& ideal);

}  // namespace toricnp
