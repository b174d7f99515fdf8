#pragma once

// Truncated fractional power series in one variable with rational
// coefficients and an explicit truncation order.

#include <map>
#include <optional>
#include <string>

#include "toricnp/exactmath.hpp"

namespace toricnp {

class PuiseuxSeries {
 public:
  PuiseuxSeries() = default;
  explicit PuiseuxSeries(std::string var, std::optional<Rational> omega = std::nullopt)
      : var_(std::move(var)), omega_(std::move(omega)) {}
  static PuiseuxSeries monomial(std::string var, const Rational& c, const Rational& e);

  const std::string& var() const { return var_; }
  const std::map<Rational, Rational>& terms() const { return terms_; }
  /// Known up to but excluding this exponent; empty means exact.
  const std::optional<Rational>& omega() const { return omega_; }
  bool is_exact() const { return !omega_; }
  bool is_zero() const { return terms_.empty(); }
  std::optional<Rational> lead_exponent() const;
  Rational coefficient(const Rational& e) const;

  void add_term(const Rational& c, const Rational& e);
  PuiseuxSeries truncated(const Rational& omega) const;

  friend bool operator==(const PuiseuxSeries&, const PuiseuxSeries&) = default;

 private:
  std::string var_;
  std::map<Rational, Rational> terms_;
  std::optional<Rational> omega_;
};

enum class SeriesOp { Add, Sub, Mul };
PuiseuxSeries series_arith(const PuiseuxSeries& a, const PuiseuxSeries& b, SeriesOp op);
/// a^k. Negative k only for a single-term exact series.
PuiseuxSeries series_pow(const PuiseuxSeries& a, long k);
PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries scaled(const PuiseuxSeries& a, const Rational& c);

/// "x + x^4 + 2*x^7 + O(x^10)".
std::string to_string(const PuiseuxSeries& s);

}  // namespace toricnp
