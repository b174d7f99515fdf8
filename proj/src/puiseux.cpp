#include "toricnp/puiseux.hpp"

#include <algorithm>

#include "toricnp/error.hpp"

namespace toricnp {

namespace {

// min over optional omegas where empty means +infinity
std::optional<Rational> min_omega(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

std::string exponent_text(const Rational& e) {
  return is_integer(e) ? e.get_str() : "(" + e.get_str() + ")";
}

}  // namespace

PuiseuxSeries PuiseuxSeries::monomial(std::string var, const Rational& c, const Rational& e) {
  PuiseuxSeries s(std::move(var));
  s.add_term(c, e);
  return s;
}

std::optional<Rational> PuiseuxSeries::lead_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

Rational PuiseuxSeries::coefficient(const Rational& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void PuiseuxSeries::add_term(const Rational& c, const Rational& e) {
  if (c == 0 || (omega_ && e >= *omega_)) return;
  Rational& slot = terms_[e];
  slot += c;
  if (slot == 0) terms_.erase(e);
}

PuiseuxSeries PuiseuxSeries::truncated(const Rational& omega) const {
  PuiseuxSeries out(var_, min_omega(omega_, omega));
  for (const auto& [e, c] : terms_) out.add_term(c, e);
  return out;
}

PuiseuxSeries series_arith(const PuiseuxSeries& a, const PuiseuxSeries& b, SeriesOp op) {
  if (a.var() != b.var()) fail(ErrorKind::Domain, "series in different variables");
  if (op != SeriesOp::Mul) {
    PuiseuxSeries out(a.var(), min_omega(a.omega(), b.omega()));
    for (const auto& [e, c] : a.terms()) out.add_term(c, e);
    for (const auto& [e, c] : b.terms()) out.add_term(op == SeriesOp::Add ? c : Rational(-c), e);
    return out;
  }
  // (A + O(x^wa)) (B + O(x^wb)) is known below min(wa + lead B, wb + lead A)
  std::optional<Rational> omega;
  auto la = a.lead_exponent(), lb = b.lead_exponent();
  if (a.omega()) omega = lb ? std::optional<Rational>(*a.omega() + *lb) : std::nullopt;
  if (b.omega()) omega = min_omega(omega, la ? std::optional<Rational>(*b.omega() + *la) : std::nullopt);
  if (a.omega() && b.omega() && !la && !lb) omega = *a.omega() + *b.omega();
  PuiseuxSeries out(a.var(), omega);
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) out.add_term(ca * cb, ea + eb);
  return out;
}

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) { return series_arith(a, b, SeriesOp::Add); }
PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return series_arith(a, b, SeriesOp::Sub); }
PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) { return series_arith(a, b, SeriesOp::Mul); }

PuiseuxSeries scaled(const PuiseuxSeries& a, const Rational& c) {
  PuiseuxSeries out(a.var(), a.omega());
  if (c == 0) return out;
  for (const auto& [e, k] : a.terms()) out.add_term(k * c, e);
  return out;
}

PuiseuxSeries series_pow(const PuiseuxSeries& a, long k) {
  if (k < 0) {
    if (!a.is_exact() || a.terms().size() != 1)
      fail(ErrorKind::Unsupported, "negative power of a series with more than one term");
    const auto& [e, c] = *a.terms().begin();
    Rational inv = 1 / c;
    Rational out = 1;
    for (long i = 0; i < -k; ++i) out *= inv;
    return PuiseuxSeries::monomial(a.var(), out, e * k);
  }
  PuiseuxSeries result = PuiseuxSeries::monomial(a.var(), 1, 0);
  PuiseuxSeries base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::string to_string(const PuiseuxSeries& s) {
  std::string out;
  for (const auto& [e, c] : s.terms()) {
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono;
    if (e != 0) mono = e == 1 ? s.var() : s.var() + "^" + exponent_text(e);
    if (mono.empty())
      out += mag.get_str();
    else if (mag == 1)
      out += mono;
    else
      out += mag.get_str() + "*" + mono;
  }
  if (s.omega()) {
    std::string big = "O(" + s.var() + (*s.omega() == 1 ? "" : "^" + exponent_text(*s.omega())) + ")";
    out += out.empty() ? big : " + " + big;
  }
  return out.empty() ? "0" : out;
}

}  // namespace toricnp
