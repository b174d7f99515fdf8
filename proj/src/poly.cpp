#include "toricnp/poly.hpp"

#include <algorithm>
#include <sstream>

#include "toricnp/detail/gpoly.hpp"
#include "toricnp/error.hpp"

namespace toricnp {

ExpVector exp_vector(std::initializer_list<long> values) {
  ExpVector e;
  for (long v : values) e.emplace_back(v);
  return e;
}

bool is_integral(const ExpVector& e) {
  return std::all_of(e.begin(), e.end(), [](const Rational& q) { return is_integer(q); });
}

std::string to_string(const ExpVector& e) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i].get_str();
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------- ParamMono

ParamMono ParamMono::single(const std::string& name, const Rational& exponent) {
  ParamMono p;
  p.set(name, exponent);
  return p;
}

Rational ParamMono::exponent(const std::string& name) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), name,
                             [](const auto& f, const std::string& n) { return f.first < n; });
  return it != factors_.end() && it->first == name ? it->second : Rational(0);
}

void ParamMono::set(const std::string& name, const Rational& exponent) {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), name,
                             [](const auto& f, const std::string& n) { return f.first < n; });
  if (it != factors_.end() && it->first == name) {
    if (exponent == 0)
      factors_.erase(it);
    else
      it->second = exponent;
  } else if (exponent != 0) {
    factors_.insert(it, {name, exponent});
  }
}

bool ParamMono::is_integral() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const auto& f) { return is_integer(f.second); });
}

ParamMono ParamMono::inverse() const { return pow(-1); }

ParamMono ParamMono::pow(const Rational& k) const {
  ParamMono out;
  if (k == 0) return out;
  out.factors_ = factors_;
  for (auto& f : out.factors_) f.second *= k;
  return out;
}

ParamMono operator*(const ParamMono& a, const ParamMono& b) {
  ParamMono out = a;
  for (const auto& [name, e] : b.factors_) out.set(name, out.exponent(name) + e);
  return out;
}

namespace {

std::string power_suffix(const Rational& e) {
  if (e == 1) return "";
  if (is_integer(e)) return "^" + e.get_str();
  return "^(" + e.get_str() + ")";
}

}  // namespace

std::string to_string(const ParamMono& p) {
  std::string out;
  for (const auto& [name, e] : p.factors()) {
    if (!out.empty()) out += '*';
    out += name + power_suffix(e);
  }
  return out.empty() ? "1" : out;
}

// -------------------------------------------------------------------- Coeff

Coeff Coeff::param(const std::string& name, const Rational& exponent) {
  return {1, ParamMono::single(name, exponent)};
}

Coeff Coeff::inverse() const {
  if (scalar == 0) fail(ErrorKind::Domain, "inverse of a zero coefficient");
  return {1 / scalar, params.inverse()};
}

Coeff Coeff::pow(long k) const {
  if (k == 0) return Coeff(1);
  Rational s = 1;
  Rational base = k > 0 ? scalar : Rational(1 / scalar);
  for (long i = 0; i < (k > 0 ? k : -k); ++i) s *= base;
  return {s, params.pow(k)};
}

std::string to_string(const Coeff& c) {
  if (c.params.is_one()) return c.scalar.get_str();
  if (c.scalar == 1) return to_string(c.params);
  if (c.scalar == -1) return "-" + to_string(c.params);
  return c.scalar.get_str() + "*" + to_string(c.params);
}

// --------------------------------------------------------------------- Poly

Poly::Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

Poly Poly::constant(std::vector<std::string> vars, const Coeff& c) {
  Poly f(std::move(vars));
  f.add_term(c, ExpVector(f.vars_.size()));
  return f;
}

Poly Poly::variable(std::vector<std::string> vars, const std::string& name) {
  Poly f(std::move(vars));
  ExpVector e(f.vars_.size());
  e[f.var_index(name)] = 1;
  f.add_term(Coeff(1), e);
  return f;
}

Poly Poly::monomial(std::vector<std::string> vars, const Coeff& c, ExpVector exps) {
  Poly f(std::move(vars));
  f.add_term(c, exps);
  return f;
}

std::size_t Poly::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) fail(ErrorKind::Domain, "unknown indeterminate '" + name + "'");
  return static_cast<std::size_t>(it - vars_.begin());
}

void Poly::add_term(const Coeff& c, const ExpVector& exps) { add_term(c.scalar, Monomial{exps, c.params}); }

void Poly::add_term(const Rational& c, const Monomial& m) {
  if (m.exps.size() != vars_.size()) fail(ErrorKind::Domain, "exponent vector length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Poly::has_params() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return !t.first.params.is_one(); });
}

bool Poly::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return toricnp::is_integral(t.first.exps); });
}

bool Poly::is_nonnegative() const {
  for (const auto& [m, c] : terms_)
    for (const auto& e : m.exps)
      if (e < 0) return false;
  return true;
}

Poly Poly::coefficient_of(const ExpVector& exps) const {
  Poly out(std::vector<std::string>{});
  for (const auto& [m, c] : terms_)
    if (m.exps == exps) out.add_term(c, Monomial{{}, m.params});
  return out;
}

Poly Poly::evaluate_params(const std::map<std::string, Rational>& values) const {
  Poly out(vars_);
  for (const auto& [m, c] : terms_) {
    Rational scale = c;
    ParamMono rest;
    for (const auto& [name, e] : m.params.factors()) {
      auto it = values.find(name);
      if (it == values.end()) {
        rest.set(name, e);
        continue;
      }
      if (!is_integer(e)) fail(ErrorKind::Unsupported, "fractional power of parameter '" + name + "'");
      scale *= Coeff(it->second).pow(e.get_num().get_si()).scalar;
    }
    out.add_term(scale, Monomial{m.exps, rest});
  }
  return out;
}

Poly Poly::with_vars(const std::vector<std::string>& vars) const {
  Poly out(vars);
  std::vector<std::size_t> map(vars_.size());
  std::vector<bool> present(vars_.size(), false);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    if (it != vars.end()) {
      map[i] = static_cast<std::size_t>(it - vars.begin());
      present[i] = true;
    }
  }
  for (const auto& [m, c] : terms_) {
    ExpVector e(vars.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (m.exps[i] == 0) continue;
      if (!present[i]) fail(ErrorKind::Domain, "indeterminate '" + vars_[i] + "' missing from target list");
      e[map[i]] = m.exps[i];
    }
    out.add_term(c, Monomial{e, m.params});
  }
  return out;
}

void Poly::check_same_vars(const Poly& g) const {
  if (vars_ != g.vars_) fail(ErrorKind::Domain, "polynomials over different indeterminate lists");
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& g) {
  check_same_vars(g);
  for (const auto& [m, c] : g.terms_) add_term(c, m);
  return *this;
}

Poly& Poly::operator-=(const Poly& g) {
  check_same_vars(g);
  for (const auto& [m, c] : g.terms_) add_term(-c, m);
  return *this;
}

Poly operator*(const Poly& f, const Poly& g) {
  f.check_same_vars(g);
  Poly out(f.vars_);
  for (const auto& [mf, cf] : f.terms_)
    for (const auto& [mg, cg] : g.terms_) {
      Monomial m{mf.exps, mf.params * mg.params};
      for (std::size_t i = 0; i < m.exps.size(); ++i) m.exps[i] += mg.exps[i];
      out.add_term(cf * cg, m);
    }
  return out;
}

Poly Poly::scaled(const Coeff& c) const {
  Poly out(vars_);
  for (const auto& [m, v] : terms_) out.add_term(v * c.scalar, Monomial{m.exps, m.params * c.params});
  return out;
}

Poly Poly::pow(unsigned k) const {
  Poly out = constant(vars_, Coeff(1));
  Poly base = *this;
  while (k) {
    if (k & 1u) out = out * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return out;
}

Poly poly_arith(const Poly& f, const Poly& g, PolyOp op) {
  switch (op) {
    case PolyOp::Add:
      return f + g;
    case PolyOp::Sub:
      return f - g;
    case PolyOp::Mul:
      return f * g;
  }
  return f;
}

std::set<ExpVector> support(const Poly& f) {
  std::set<ExpVector> s;
  for (const auto& [m, c] : f.terms()) s.insert(m.exps);
  return s;
}

Poly reduce(const Poly& f, const std::vector<Poly>& g, const MonomialOrder& ord) {
  if (g.empty()) fail(ErrorKind::Domain, "reduce: empty divisor list");
  std::vector<detail::GPoly> gg;
  for (const auto& p : g) {
    if (p.vars() != f.vars()) fail(ErrorKind::Domain, "reduce: indeterminate lists differ");
    gg.push_back(detail::from_poly(p, ord));
  }
  return detail::to_poly(detail::normal_form(detail::from_poly(f, ord), gg, ord), f.vars());
}

Poly substitute_power(const Poly& f, const std::string& var, const Coeff& s, const Rational& r) {
  const std::size_t j = f.var_index(var);
  if (j == 0) fail(ErrorKind::Domain, "cannot substitute the expansion variable itself");
  std::vector<std::string> rest = f.vars();
  rest.erase(rest.begin() + static_cast<long>(j));
  Poly out(rest);
  for (const auto& [m, c] : f.terms()) {
    const Rational& a = m.exps[j];
    if (!is_integer(a)) fail(ErrorKind::Unsupported, "substitution into a fractional power of '" + var + "'");
    Coeff factor = s.pow(a.get_num().get_si());
    ExpVector e = m.exps;
    e[0] += a * r;
    e.erase(e.begin() + static_cast<long>(j));
    out.add_term(c * factor.scalar, Monomial{e, m.params * factor.params});
  }
  return out;
}

std::string to_string(const Poly& f, const MonomialOrder& ord) {
  if (f.is_zero()) return "0";
  std::vector<std::pair<Monomial, Rational>> terms(f.terms().begin(), f.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    int c = ord.compare(a.first.exps, b.first.exps);
    if (c != 0) return c > 0;
    return a.first.params < b.first.params;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    Rational mag = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    std::vector<std::string> factors;
    for (const auto& [name, e] : m.params.factors()) factors.push_back(name + power_suffix(e));
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      if (m.exps[i] != 0) factors.push_back(f.vars()[i] + power_suffix(m.exps[i]));
    if (mag != 1 || factors.empty()) factors.insert(factors.begin(), mag.get_str());
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

}  // namespace toricnp
