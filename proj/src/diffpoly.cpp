#include "toricnp/diffpoly.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "toricnp/error.hpp"

namespace toricnp {

DiffPoly::DiffPoly(std::vector<std::string> vars, std::optional<std::string> independent,
                   std::optional<std::string> dependent)
    : vars_(std::move(vars)) {
  if (independent && dependent) set_derivative_pair(*dependent, *independent);
}

DiffPoly DiffPoly::from_poly(const Poly& f) {
  DiffPoly out(f.vars());
  for (const auto& [m, c] : f.terms()) out.add_term(Coeff(c, m.params), m.exps);
  return out;
}

std::size_t DiffPoly::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) fail(ErrorKind::Domain, "unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - vars_.begin());
}

void DiffPoly::set_derivative_pair(const std::string& dependent, const std::string& independent) {
  var_index(dependent);
  var_index(independent);
  if (dependent == independent) fail(ErrorKind::Domain, "derivative of a variable with respect to itself");
  dependent_ = dependent;
  independent_ = independent;
}

void DiffPoly::add_term(const Coeff& c, const ExpVector& exps, int order) {
  if (exps.size() != vars_.size()) fail(ErrorKind::Domain, "exponent vector length mismatch");
  if (order < 0) fail(ErrorKind::Domain, "negative derivative order");
  if (order > 0 && !dependent_) fail(ErrorKind::Domain, "derivative term without a declared variable pair");
  if (c.scalar == 0) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->order == order && it->exps == exps && it->coeff.params == c.params) {
      it->coeff.scalar += c.scalar;
      if (it->coeff.scalar == 0) terms_.erase(it);
      return;
    }
  }
  terms_.push_back({c, exps, order});
}

bool DiffPoly::has_derivatives() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const DiffTerm& t) { return t.order > 0; });
}

int DiffPoly::max_order() const {
  int s = 0;
  for (const auto& t : terms_) s = std::max(s, t.order);
  return s;
}

Poly DiffPoly::to_poly() const {
  if (has_derivatives()) fail(ErrorKind::Domain, "equation contains derivative terms");
  Poly out(vars_);
  for (const auto& t : terms_) out.add_term(t.coeff, t.exps);
  return out;
}

DiffPoly DiffPoly::evaluate_params(const std::map<std::string, Rational>& values) const {
  DiffPoly out = *this;
  out.terms_.clear();
  for (const auto& t : terms_) {
    Poly c = Poly::constant({}, t.coeff).evaluate_params(values);
    for (const auto& [m, v] : c.terms()) out.add_term(Coeff(v, m.params), t.exps, t.order);
  }
  return out;
}

DiffPoly DiffPoly::operator-() const { return scaled(Coeff(-1)); }

DiffPoly DiffPoly::scaled(const Coeff& c) const {
  DiffPoly out = *this;
  out.terms_.clear();
  for (const auto& t : terms_) out.add_term(t.coeff * c, t.exps, t.order);
  return out;
}

bool operator==(const DiffPoly& a, const DiffPoly& b) {
  if (a.vars_ != b.vars_ || a.independent_ != b.independent_ || a.dependent_ != b.dependent_) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  auto key = [](const DiffTerm& t) { return std::tie(t.order, t.exps, t.coeff.params, t.coeff.scalar); };
  auto sorted = [&](std::vector<DiffTerm> v) {
    std::sort(v.begin(), v.end(), [&](const DiffTerm& x, const DiffTerm& y) { return key(x) < key(y); });
    return v;
  };
  auto sa = sorted(a.terms_), sb = sorted(b.terms_);
  for (std::size_t i = 0; i < sa.size(); ++i)
    if (key(sa[i]) != key(sb[i])) return false;
  return true;
}

namespace {

std::string power(const std::string& name, const Rational& e) {
  if (e == 1) return name;
  if (is_integer(e)) return name + "^" + e.get_str();
  return name + "^(" + e.get_str() + ")";
}

}  // namespace

std::string term_to_string(const DiffPoly& p, const DiffTerm& t, bool with_sign) {
  std::vector<std::string> factors;
  for (const auto& [name, e] : t.coeff.params.factors()) factors.push_back(power(name, e));
  for (std::size_t i = 0; i < t.exps.size(); ++i)
    if (t.exps[i] != 0) factors.push_back(power(p.vars()[i], t.exps[i]));
  if (t.order > 0)
    factors.push_back("D(" + *p.dependent() + "," + *p.independent() + "," + std::to_string(t.order) + ")");
  Rational mag = with_sign ? t.coeff.scalar : Rational(abs(t.coeff.scalar));
  std::string out;
  if (factors.empty()) return mag.get_str();
  if (mag == -1)
    out = "-";
  else if (mag != 1)
    out = mag.get_str() + "*";
  for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? "*" : "") + factors[i];
  return out;
}

std::string to_string(const DiffPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < p.terms().size(); ++i) {
    const auto& t = p.terms()[i];
    if (i == 0)
      os << (t.coeff.scalar < 0 ? "-" : "");
    else
      os << (t.coeff.scalar < 0 ? " - " : " + ");
    os << term_to_string(p, t, false);
  }
  return os.str();
}

}  // namespace toricnp
