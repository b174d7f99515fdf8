#include "toricnp/npexpand.hpp"

#include <algorithm>

#include "toricnp/error.hpp"

namespace toricnp {

namespace {

Rational dot(const IntVector& m, const ExpVector& e) {
  Rational s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += Rational(m[i]) * e[i];
  return s;
}

Rational rpow(const Rational& base, const Rational& e) {
  if (!is_integer(e)) fail(ErrorKind::Unsupported, "fractional power of an ancillary value");
  long k = e.get_num().get_si();
  Rational out = 1;
  Rational b = k < 0 ? Rational(1 / base) : base;
  for (long i = 0; i < std::labs(k); ++i) out *= b;
  return out;
}

void require_numeric(const Poly& f) {
  if (f.has_params()) fail(ErrorKind::Domain, "assign numeric values to the parameters before expanding");
}

// Coefficient times ancillary factors and the x_1 exponent of one term of f
// under x_j = s_j x_1^{r_j}, j = 2..d-1.
std::pair<Rational, Rational> reduce_term(const ExpVector& e, const Rational& c, const AncillarySubstitution& anc) {
  Rational coeff = c;
  Rational x1 = e[0];
  for (std::size_t j = 0; j < anc.values.size(); ++j) {
    coeff *= rpow(anc.values[j], e[j + 1]);
    x1 += anc.exponents[j] * e[j + 1];
  }
  return {coeff, x1};
}

AncillarySubstitution ancillary_for(const DistinguishedFacet& df, const std::vector<Rational>& values,
                                    std::size_t d) {
  if (d < 2) fail(ErrorKind::Domain, "expansion needs an input and an output variable");
  if (df.exponents.size() != d - 1) fail(ErrorKind::Domain, "facet does not match the polynomial");
  if (values.size() != d - 2)
    fail(ErrorKind::Domain, "expected " + std::to_string(d - 2) + " ancillary values");
  AncillarySubstitution anc;
  for (std::size_t j = 0; j + 2 < d; ++j) {
    if (values[j] == 0) fail(ErrorKind::Domain, "ancillary value must be nonzero");
    anc.values.push_back(values[j]);
    anc.exponents.push_back(df.exponents[j]);
  }
  return anc;
}

Poly derivative_last(const Poly& f) {
  Poly out(f.vars());
  const std::size_t d = f.vars().size() - 1;
  for (const auto& [m, c] : f.terms()) {
    if (m.exps[d] == 0) continue;
    Monomial n = m;
    n.exps[d] -= 1;
    out.add_term(c * m.exps[d], n);
  }
  return out;
}

Poly univariate_derivative(const Poly& F) {
  Poly out(F.vars());
  for (const auto& [m, c] : F.terms()) {
    if (m.exps[0] == 0) continue;
    Monomial n = m;
    n.exps[0] -= 1;
    out.add_term(c * m.exps[0], n);
  }
  return out;
}

Rational eval_univariate(const Poly& F, const Rational& s) {
  Rational v = 0;
  for (const auto& [m, c] : F.terms()) v += c * rpow(s, m.exps[0]);
  return v;
}

// Dense integer coefficients, lowest degree first, of F * s^{-min} cleared of denominators.
std::vector<Integer> dense_integer(const Poly& F, Rational& shift) {
  Rational lo = 0, hi = 0;
  bool first = true;
  for (const auto& [m, c] : F.terms()) {
    if (!is_integer(m.exps[0])) fail(ErrorKind::Unsupported, "facet polynomial has fractional exponents");
    lo = first ? m.exps[0] : std::min(lo, m.exps[0]);
    hi = first ? m.exps[0] : std::max(hi, m.exps[0]);
    first = false;
  }
  shift = lo;
  std::vector<Rational> q(Rational(hi - lo).get_num().get_ui() + 1);
  for (const auto& [m, c] : F.terms()) q[Rational(m.exps[0] - lo).get_num().get_ui()] += c;
  Integer den = 1;
  for (const auto& x : q) den = lcm(den, Integer(x.get_den()));
  std::vector<Integer> out;
  for (const auto& x : q) out.push_back(Rational(x * den).get_num());
  return out;
}

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> out;
  for (Integer k = 1; k * k <= n; ++k)
    if (n % k == 0) {
      out.push_back(k);
      if (k * k != n) out.push_back(n / k);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// synthetic division by (s - r); returns false when r is not a root
bool deflate(std::vector<Rational>& p, const Rational& r) {
  std::vector<Rational> q(p.size() - 1);
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = acc * r + p[i];
    if (i > 0) q[i - 1] = acc;
  }
  if (acc != 0) return false;
  p = std::move(q);
  return true;
}

}  // namespace

FacetData facet_data(const Poly& f, const DistinguishedFacet& df, const std::vector<Rational>& ancillary) {
  require_numeric(f);
  const std::size_t d = f.vars().size();
  FacetData out;
  out.ancillary = ancillary_for(df, ancillary, d);
  if (!df.gap) fail(ErrorKind::Domain, "facet has no gap in the input variable");
  out.gap = *df.gap;
  out.lead_exponent = df.exponents.back();
  out.facet_level = make_rational(df.offset, df.normal[0]);
  out.F = Poly({"s"});
  for (const auto& [m, c] : f.terms()) {
    auto [coeff, x1] = reduce_term(m.exps, c, out.ancillary);
    x1 += out.lead_exponent * m.exps[d - 1];
    const Rational level = dot(df.normal, m.exps) / Rational(df.normal[0]);
    if (x1 != level) fail(ErrorKind::Invariant, "substituted exponent disagrees with the facet normal");
    if (level == out.facet_level)
      out.F.add_term(Coeff(coeff), ExpVector{m.exps[d - 1]});
    else
      out.G.push_back({-coeff, m.exps[d - 1], level - out.facet_level});
  }
  if (out.F.is_zero()) fail(ErrorKind::Invariant, "facet polynomial vanishes");
  return out;
}

RootResult facet_roots(const Poly& F) {
  if (F.vars().size() != 1) fail(ErrorKind::Domain, "facet polynomial must be univariate");
  if (F.is_zero()) fail(ErrorKind::Domain, "zero facet polynomial");
  Rational shift;
  std::vector<Integer> ints = dense_integer(F, shift);
  std::vector<Rational> p(ints.begin(), ints.end());
  // drop the factor s^k
  while (p.size() > 1 && p.front() == 0) p.erase(p.begin());
  RootResult out;
  if (p.size() > 1) {
    std::vector<Rational> candidates;
    for (const auto& a : divisors(ints.back()))
      for (const auto& b : divisors(p.front().get_num())) {
        candidates.push_back(make_rational(b, a));
        candidates.push_back(make_rational(-b, a));
      }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
      int mult = 0;
      while (p.size() > 1 && deflate(p, r)) ++mult;
      if (mult) out.roots.emplace_back(r, mult);
    }
  }
  out.residual = Poly(F.vars());
  for (std::size_t i = 0; i < p.size(); ++i) out.residual.add_term(Coeff(p[i]), ExpVector{Rational(long(i))});
  return out;
}

PuiseuxSeries substitute_series(const Poly& f, const PuiseuxSeries& T, const AncillarySubstitution& anc) {
  require_numeric(f);
  const std::size_t d = f.vars().size();
  PuiseuxSeries out(T.var());
  for (const auto& [m, c] : f.terms()) {
    auto [coeff, x1] = reduce_term(m.exps, c, anc);
    const Rational& k = m.exps[d - 1];
    if (!is_integer(k)) fail(ErrorKind::Unsupported, "fractional power of the output variable");
    PuiseuxSeries t = series_pow(T, k.get_num().get_si());
    out = out + scaled(t * PuiseuxSeries::monomial(T.var(), 1, x1), coeff);
  }
  return out;
}

PuiseuxSeries np_expand(const Poly& f, const DistinguishedFacet& df, const Rational& root, int N,
                        const std::vector<Rational>& ancillary) {
  require_numeric(f);
  if (N < 0) fail(ErrorKind::Domain, "iteration count must be non-negative");
  FacetData fd = facet_data(f, df, ancillary);
  if (eval_univariate(fd.F, root) != 0) fail(ErrorKind::Domain, "value " + root.get_str() + " is not a root of the facet polynomial");
  if (eval_univariate(univariate_derivative(fd.F), root) == 0)
    fail(ErrorKind::Unsupported, "degenerate facet root; not supported");
  const std::string x1 = f.vars().front();
  for (const auto& [m, c] : f.terms())
    if (m.exps.back() < 0) fail(ErrorKind::Unsupported, "negative power of the output variable");

  const Poly fy = derivative_last(f);
  PuiseuxSeries T = PuiseuxSeries::monomial(x1, root, fd.lead_exponent);
  std::optional<Rational> omega;
  for (int k = 0; k <= N; ++k) {
    PuiseuxSeries g = substitute_series(f, T, fd.ancillary);
    if (g.is_zero()) return T;  // exact solution
    PuiseuxSeries gy = substitute_series(fy, T, fd.ancillary);
    if (gy.is_zero()) fail(ErrorKind::Unsupported, "iteration stalls");
    const Rational e = *g.lead_exponent() - *gy.lead_exponent();
    const Rational c = -g.terms().begin()->second / gy.terms().begin()->second;
    if (e <= T.terms().rbegin()->first) fail(ErrorKind::Invariant, "correction does not raise the order");
    if (k == N) {
      omega = e;
      break;
    }
    T.add_term(c, e);
  }
  return T.truncated(*omega);
}

ResidualOrder residual_order(const Poly& f, const PuiseuxSeries& s, const Rational& bound,
                             const AncillarySubstitution& anc) {
  PuiseuxSeries exact(s.var());
  for (const auto& [e, c] : s.terms()) exact.add_term(c, e);
  PuiseuxSeries g = substitute_series(f, exact, anc);
  ResidualOrder r{std::nullopt, bound};
  if (!g.is_zero() && *g.lead_exponent() < bound) r.order = *g.lead_exponent();
  return r;
}

std::string to_string(const ResidualOrder& r, const std::string& var) {
  auto ex = [](const Rational& q) { return is_integer(q) ? q.get_str() : "(" + q.get_str() + ")"; };
  if (r.order) return "residual order " + ex(*r.order) + " (" + var + "^" + ex(*r.order) + ")";
  return "residual order >= " + ex(r.bound);
}

}  // namespace toricnp
