#pragma once

// Multivariate Laurent polynomials over Q whose terms may also carry a power
// product of named symbolic parameters (dimensionless constants such as R).

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "toricnp/exactmath.hpp"

namespace toricnp {

/// Exponents per indeterminate. Integers in ordinary use; rational values
/// appear only after power substitutions.
using ExpVector = std::vector<Rational>;

ExpVector exp_vector(std::initializer_list<long> values);
bool is_integral(const ExpVector& e);
std::string to_string(const ExpVector& e);

/// Power product of named parameters, e.g. R^2*s^-1. Zero exponents omitted.
class ParamMono {
 public:
  ParamMono() = default;
  static ParamMono single(const std::string& name, const Rational& exponent = 1);

  Rational exponent(const std::string& name) const;
  void set(const std::string& name, const Rational& exponent);
  const std::vector<std::pair<std::string, Rational>>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  bool is_integral() const;

  ParamMono inverse() const;
  ParamMono pow(const Rational& k) const;
  friend ParamMono operator*(const ParamMono& a, const ParamMono& b);
  friend auto operator<=>(const ParamMono&, const ParamMono&) = default;
  friend bool operator==(const ParamMono&, const ParamMono&) = default;

 private:
  std::vector<std::pair<std::string, Rational>> factors_;  // sorted by name
};

std::string to_string(const ParamMono& p);

/// A single-term coefficient: rational scalar times a parameter power product.
struct Coeff {
  Rational scalar = 1;
  ParamMono params;

  Coeff() = default;
  Coeff(Rational s) : scalar(std::move(s)) {}
  Coeff(Rational s, ParamMono p) : scalar(std::move(s)), params(std::move(p)) {}
  static Coeff param(const std::string& name, const Rational& exponent = 1);

  Coeff inverse() const;
  /// Integer powers only; the scalar part stays rational.
  Coeff pow(long k) const;
  friend Coeff operator*(const Coeff& a, const Coeff& b) { return {a.scalar * b.scalar, a.params * b.params}; }
  friend bool operator==(const Coeff&, const Coeff&) = default;
};

std::string to_string(const Coeff& c);

struct Monomial {
  ExpVector exps;
  ParamMono params;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Total orders on exponent vectors of equal length.
struct MonomialOrder {
  enum class Kind { Lex, GRevLex, Elimination };
  Kind kind = Kind::GRevLex;
  /// Elimination only: indeterminates [0, block) form the eliminated block.
  std::size_t block = 0;

  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder grevlex() { return {Kind::GRevLex, 0}; }
  static MonomialOrder elimination(std::size_t block) { return {Kind::Elimination, block}; }

  /// Negative, zero or positive as a <, ==, > b.
  template <typename V>
  int compare(const V& a, const V& b) const;
};

class Poly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Poly() = default;
  explicit Poly(std::vector<std::string> vars);

  static Poly constant(std::vector<std::string> vars, const Coeff& c);
  static Poly variable(std::vector<std::string> vars, const std::string& name);
  static Poly monomial(std::vector<std::string> vars, const Coeff& c, ExpVector exps);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t var_index(const std::string& name) const;
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Coeff& c, const ExpVector& exps);
  void add_term(const Rational& c, const Monomial& m);

  bool has_params() const;
  bool is_integral() const;
  bool is_nonnegative() const;

  /// Parameter-only polynomial multiplying x^exps (zero indeterminates).
  Poly coefficient_of(const ExpVector& exps) const;
  /// Replaces parameters by rational values; parameters not in `values` stay.
  Poly evaluate_params(const std::map<std::string, Rational>& values) const;
  /// Re-expresses over another indeterminate list (by name). Indeterminates
  /// absent from `vars` must not occur.
  Poly with_vars(const std::vector<std::string>& vars) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& g);
  Poly& operator-=(const Poly& g);
  friend Poly operator+(Poly f, const Poly& g) { return f += g; }
  friend Poly operator-(Poly f, const Poly& g) { return f -= g; }
  friend Poly operator*(const Poly& f, const Poly& g);
  Poly scaled(const Coeff& c) const;
  Poly pow(unsigned k) const;
  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void check_same_vars(const Poly& g) const;

  std::vector<std::string> vars_;
  TermMap terms_;
};

enum class PolyOp { Add, Sub, Mul };
Poly poly_arith(const Poly& f, const Poly& g, PolyOp op);

/// Exponent vectors with nonzero coefficient.
std::set<ExpVector> support(const Poly& f);

/// Multivariate division remainder of f by the ordered list g. Requires
/// non-negative integer exponents and no parameters.
Poly reduce(const Poly& f, const std::vector<Poly>& g, const MonomialOrder& ord);

/// Substitutes var = s * x1^r where x1 is vars()[0]. The substituted
/// indeterminate is dropped; x1 exponents may become rational.
Poly substitute_power(const Poly& f, const std::string& var, const Coeff& s, const Rational& r);

/// Canonical rendering: terms in decreasing `ord`, e.g. "-1/2*R^2*x^3*y^-1 + y".
std::string to_string(const Poly& f, const MonomialOrder& ord = MonomialOrder::grevlex());

template <typename V>
int MonomialOrder::compare(const V& a, const V& b) const {
  const std::size_t n = a.size();
  auto lex_cmp = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  };
  auto grevlex_cmp = [&](std::size_t lo, std::size_t hi) {
    typename V::value_type da{}, db{};
    for (std::size_t i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = hi; i-- > lo;)
      if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    return 0;
  };
  switch (kind) {
    case Kind::Lex:
      return lex_cmp(0, n);
    case Kind::GRevLex:
      return grevlex_cmp(0, n);
    case Kind::Elimination: {
      const std::size_t cut = block < n ? block : n;
      if (int c = grevlex_cmp(0, cut)) return c;
      return grevlex_cmp(cut, n);
    }
  }
  return 0;
}

}  // namespace toricnp
