#include "toricnp/diffnp.hpp"

#include <algorithm>

#include "toricnp/error.hpp"
#include "toricnp/npexpand.hpp"

namespace toricnp {

namespace {

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

long integer_exponent(const Rational& e, const std::string& what) {
  if (!is_integer(e)) fail(ErrorKind::Unsupported, "fractional power of " + what);
  return e.get_num().get_si();
}

Rational falling(const Rational& x, int s) {
  Rational out = 1;
  for (int i = 0; i < s; ++i) out *= x - i;
  return out;
}

DiffPoly like(const DiffPoly& p, std::vector<std::string> vars) {
  if (p.independent() && p.dependent()) return DiffPoly(std::move(vars), p.independent(), p.dependent());
  return DiffPoly(std::move(vars));
}

// independent / dependent names of a two-variable equation
std::pair<std::string, std::string> uy(const DiffPoly& eq) {
  std::string u = eq.independent() ? *eq.independent() : eq.vars().front();
  std::string y = eq.dependent() ? *eq.dependent() : eq.vars().back();
  if (u == y) fail(ErrorKind::Domain, "equation needs distinct independent and dependent variables");
  for (const auto& t : eq.terms())
    for (std::size_t i = 0; i < eq.vars().size(); ++i)
      if (eq.vars()[i] != u && eq.vars()[i] != y && t.exps[i] != 0)
        fail(ErrorKind::Domain, "variable '" + eq.vars()[i] + "' must be eliminated first");
  return {u, y};
}

PuiseuxSeries derivative(const PuiseuxSeries& T, int s) {
  PuiseuxSeries out = T;
  for (int k = 0; k < s; ++k) {
    PuiseuxSeries d(T.var(), out.omega() ? std::optional<Rational>(*out.omega() - 1) : std::nullopt);
    for (const auto& [e, c] : out.terms()) d.add_term(c * e, e - 1);
    out = d;
  }
  return out;
}

Rational numeric(const Coeff& c) {
  if (!c.params.is_one())
    fail(ErrorKind::Domain, "parameter '" + c.params.factors().front().first + "' needs a numeric value");
  return c.scalar;
}

DiffPoly mul(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly out = like(a, a.vars());
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) {
      if (ta.order && tb.order) fail(ErrorKind::Invariant, "product of two derivative factors");
      ExpVector e = ta.exps;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += tb.exps[i];
      out.add_term(ta.coeff * tb.coeff, e, std::max(ta.order, tb.order));
    }
  return out;
}

DiffPoly add(const DiffPoly& a, const DiffPoly& b, const Rational& kb = 1) {
  DiffPoly out = a;
  for (const auto& t : b.terms()) out.add_term(t.coeff * Coeff(kb), t.exps, t.order);
  return out;
}

Poly param_poly(const Coeff& c) {
  Poly p(std::vector<std::string>{});
  p.add_term(c, ExpVector{});
  return p;
}

// clears negative parameter exponents and fixes the sign of a one-term denominator
void normalize_fraction(Poly& num, Poly& den) {
  std::map<std::string, Rational> lo;
  for (const Poly* p : {&num, &den})
    for (const auto& [m, c] : p->terms())
      for (const auto& [name, e] : m.params.factors()) {
        auto it = lo.find(name);
        if (it == lo.end() || e < it->second) lo[name] = e;
      }
  ParamMono shift;
  for (const auto& [name, e] : lo)
    if (e < 0) shift.set(name, -e);
  // parameters appearing in every term at a positive power also cancel
  for (const auto& [name, e] : lo) {
    bool everywhere = true;
    for (const Poly* p : {&num, &den})
      for (const auto& [m, c] : p->terms()) everywhere = everywhere && m.params.exponent(name) != 0;
    if (e > 0 && everywhere) shift.set(name, -e);
  }
  num = num.scaled(Coeff(1, shift));
  den = den.scaled(Coeff(1, shift));
  if (den.terms().size() == 1 && den.terms().begin()->second < 0) {
    num = -num;
    den = -den;
  }
}

}  // namespace

DiffPoly scale_independent(const DiffPoly& eq, const Coeff& s, const Rational& r, const std::string& u) {
  if (!eq.independent()) fail(ErrorKind::Domain, "equation has no independent variable");
  if (r == 0) fail(ErrorKind::Domain, "scaling exponent must be nonzero");
  if (s.scalar == 0) fail(ErrorKind::Domain, "scale factor must be nonzero");
  if (eq.max_order() > 2) fail(ErrorKind::Unsupported, "derivative order above 2 is not supported");
  const std::string x = *eq.independent();
  const bool merge = x != u && std::find(eq.vars().begin(), eq.vars().end(), u) != eq.vars().end();
  std::vector<std::string> vars;
  for (const auto& v : eq.vars())
    if (v != x)
      vars.push_back(v);
    else if (!merge)
      vars.push_back(u);
  DiffPoly out(vars, u, *eq.dependent());
  const std::size_t ux = out.var_index(u);
  const Coeff inv = (s * Coeff(r)).inverse();  // 1/(s r)
  for (const auto& t : eq.terms()) {
    ExpVector e(vars.size());
    for (std::size_t i = 0; i < eq.vars().size(); ++i)
      if (eq.vars()[i] != x) e[out.var_index(eq.vars()[i])] += t.exps[i];
    const Rational a = t.exps[eq.var_index(x)];
    Coeff c = t.coeff * s.pow(integer_exponent(a, "the scale factor"));
    e[ux] += r * a;
    if (t.order == 0) {
      out.add_term(c, e, 0);
    } else if (t.order == 1) {
      ExpVector e1 = e;
      e1[ux] += 1 - r;
      out.add_term(c * inv, e1, 1);
    } else {
      ExpVector e2 = e, e1 = e;
      e2[ux] += 2 - 2 * r;
      e1[ux] += 1 - 2 * r;
      out.add_term(c * inv.pow(2), e2, 2);
      out.add_term(c * inv.pow(2) * Coeff(1 - r), e1, 1);
    }
  }
  return out;
}

DiffPoly substitute_variable(const DiffPoly& eq, const std::string& var, const Coeff& s, const Rational& r,
                             const std::string& target) {
  if (eq.independent() == var || eq.dependent() == var)
    fail(ErrorKind::Domain, "substitute_variable cannot replace the derivative pair");
  std::vector<std::string> vars;
  for (const auto& v : eq.vars())
    if (v != var) vars.push_back(v);
  DiffPoly out = like(eq, vars);
  const std::size_t tx = out.var_index(target);
  for (const auto& t : eq.terms()) {
    ExpVector e(vars.size());
    for (std::size_t i = 0; i < eq.vars().size(); ++i)
      if (eq.vars()[i] != var) e[out.var_index(eq.vars()[i])] = t.exps[i];
    const Rational a = t.exps[eq.var_index(var)];
    e[tx] += r * a;
    out.add_term(t.coeff * s.pow(integer_exponent(a, "the scale factor")), e, t.order);
  }
  return out;
}

FacetSplitDiff facet_split_diff(const DiffPoly& eq, const DistinguishedFacet& df) {
  std::vector<Point> pts = kruskal_points(eq);
  FacetSplitDiff out{like(eq, eq.vars()), like(eq, eq.vars()), df.gap};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].size() != df.normal.size()) fail(ErrorKind::Domain, "facet does not match the equation");
    const DiffTerm& t = eq.terms()[i];
    if (dot(df.normal, pts[i]) == df.offset)
      out.Ftilde.add_term(t.coeff, t.exps, t.order);
    else
      out.Gtilde.add_term(t.coeff * Coeff(-1), t.exps, t.order);
  }
  return out;
}

FacetOde facet_ode(const DiffPoly& eq, const DistinguishedFacet& df) {
  FacetOde out;
  out.split = facet_split_diff(eq, df);
  out.scaled = out.split;
  const auto& vars = eq.vars();
  const std::size_t d = vars.size();
  if (eq.dependent() && *eq.dependent() != vars.back())
    fail(ErrorKind::Domain, "the dependent variable must be declared last");
  if (df.normal[0] == 0 || d < 3) return out;
  if (eq.independent() == vars.front() || eq.dependent() == vars.front())
    return out;  // nothing ancillary to the derivative pair
  for (std::size_t j = 1; j + 1 < d; ++j) {
    const std::string name = d == 3 ? std::string("s") : "s" + std::to_string(j + 1);
    const Rational& r = df.exponents[j - 1];
    std::string shown = name + "*" + vars[0] + (r == 1 ? "" : "^" + (is_integer(r) ? r.get_str() : "(" + r.get_str() + ")"));
    out.substitutions.emplace_back(vars[j], shown);
    auto apply = [&](const DiffPoly& p) {
      if (p.independent() == vars[j]) return scale_independent(p, Coeff::param(name), r, vars[0]);
      return substitute_variable(p, vars[j], Coeff::param(name), r, vars[0]);
    };
    out.scaled.Ftilde = apply(out.scaled.Ftilde);
    out.scaled.Gtilde = apply(out.scaled.Gtilde);
  }
  return out;
}

PowerLawSolution powerlaw_facet_solution(const DiffPoly& F) {
  PowerLawSolution out;
  if (F.is_zero()) {
    out.reason = "empty facet equation";
    return out;
  }
  auto [u, y] = uy(F);
  const std::size_t iu = F.var_index(u), iy = F.var_index(y);
  struct Row {
    Rational A, B;
    int s;
    Coeff c;
  };
  std::vector<Row> rows;
  for (const auto& t : F.terms()) {
    Rational A = t.exps[iu] - t.order;
    Rational B = t.exps[iy] + (t.order > 0 ? 1 : 0);
    rows.push_back({A, B, t.order, t.coeff});
  }
  auto exponent_text = [&](const Row& r) {
    std::string rho = r.B == 0 ? "" : (r.B == 1 ? "rho" : r.B.get_str() + "*rho");
    if (r.A == 0) return rho.empty() ? std::string("0") : rho;
    std::string a = r.A.get_str();
    if (rho.empty()) return a;
    return rho + (r.A > 0 ? "+" + a : a);
  };
  auto refuse = [&](const std::string& why) {
    std::string list;
    for (const auto& r : rows) list += (list.empty() ? "" : ", ") + exponent_text(r);
    out.status = PowerLawSolution::Status::Refused;
    out.reason = why + " (exponents " + list + ")";
    return out;
  };

  const bool same_B = std::all_of(rows.begin(), rows.end(), [&](const Row& r) { return r.B == rows[0].B; });
  if (same_B) {
    if (!std::all_of(rows.begin(), rows.end(), [&](const Row& r) { return r.A == rows[0].A; }))
      return refuse("no single power of " + u + " balances the facet terms");
    // every rho balances; the condition is a polynomial in rho
    Poly P({"rho"});
    for (const auto& r : rows) {
      Poly fall = Poly::constant({"rho"}, r.c);
      for (int i = 0; i < r.s; ++i)
        fall = fall * (Poly::variable({"rho"}, "rho") - Poly::constant({"rho"}, Coeff(i)));
      P += fall;
    }
    if (P.has_params()) return refuse("condition on rho has symbolic coefficients: " + to_string(P) + " = 0");
    out.status = PowerLawSolution::Status::Family;
    if (P.is_zero()) {
      out.reason = "every power law solves the facet equation";
      return out;
    }
    Poly Ps({"s"});
    for (const auto& [m, c] : P.terms()) Ps.add_term(c, m);
    bool zero_root = P.coefficient_of(ExpVector{0}).is_zero();
    if (zero_root) out.rho_roots.push_back(0);
    for (const auto& [root, mult] : facet_roots(Ps).roots) out.rho_roots.push_back(root);
    std::sort(out.rho_roots.begin(), out.rho_roots.end());
    if (out.rho_roots.empty()) return refuse("no rational rho solves " + to_string(P) + " = 0");
    return out;
  }

  std::size_t j = 1;
  while (rows[j].B == rows[0].B) ++j;
  const Rational rho = (rows[0].A - rows[j].A) / (rows[j].B - rows[0].B);
  for (const auto& r : rows)
    if (r.A + r.B * rho != rows[0].A + rows[0].B * rho) return refuse("no single power of " + u + " balances the facet terms");
  out.rho = rho;

  std::map<Rational, Poly> Q;  // sigma power -> parameter polynomial
  for (const auto& r : rows) {
    auto it = Q.try_emplace(r.B, Poly(std::vector<std::string>{})).first;
    it->second += param_poly(r.c * Coeff(falling(rho, r.s)));
  }
  for (auto it = Q.begin(); it != Q.end();) it = it->second.is_zero() ? Q.erase(it) : std::next(it);
  if (Q.empty()) {
    out.status = PowerLawSolution::Status::Family;
    out.rho_roots = {rho};
    out.reason = "sigma is free";
    return out;
  }
  const Rational kmin = Q.begin()->first, kmax = Q.rbegin()->first;
  if (kmin == kmax) return refuse("the balance at rho = " + rho.get_str() + " has no nonzero sigma");
  if (kmax - kmin == 1) {
    out.status = PowerLawSolution::Status::Unique;
    out.sigma_num = -Q.begin()->second;
    out.sigma_den = Q.rbegin()->second;
    normalize_fraction(out.sigma_num, out.sigma_den);
    return out;
  }
  Poly S({"s"});
  for (const auto& [k, q] : Q) {
    if (q.has_params()) return refuse("sigma equation of degree " + Rational(kmax - kmin).get_str() + " has symbolic coefficients");
    S.add_term(Coeff(q.terms().begin()->second), ExpVector{k - kmin});
  }
  auto roots = facet_roots(S);
  if (roots.roots.empty()) return refuse("sigma equation has no rational root");
  out.status = PowerLawSolution::Status::Roots;
  for (const auto& [r, m] : roots.roots) out.sigma_roots.push_back(r);
  return out;
}

PuiseuxSeries substitute_series_diff(const DiffPoly& eq, const PuiseuxSeries& T) {
  auto [u, y] = uy(eq);
  const std::size_t iu = eq.var_index(u), iy = eq.var_index(y);
  PuiseuxSeries out(T.var());
  for (const auto& t : eq.terms()) {
    PuiseuxSeries term = PuiseuxSeries::monomial(T.var(), numeric(t.coeff), t.exps[iu]);
    term = term * series_pow(T, integer_exponent(t.exps[iy], "the dependent variable"));
    if (t.order > 0) term = term * derivative(T, t.order);
    out = out + term;
  }
  return out;
}

PuiseuxSeries np_expand_diff(const DiffPoly& eq0, const Rational& sigma, const Rational& rho, int N,
                             const std::map<std::string, Rational>& params) {
  if (N < 0) fail(ErrorKind::Domain, "iteration count must be non-negative");
  if (sigma == 0) fail(ErrorKind::Domain, "leading coefficient must be nonzero");
  const DiffPoly eq = eq0.evaluate_params(params);
  auto [u, y] = uy(eq);
  const std::size_t iu = eq.var_index(u), iy = eq.var_index(y);
  for (const auto& t : eq.terms()) numeric(t.coeff);

  PuiseuxSeries T = PuiseuxSeries::monomial(u, sigma, rho);
  for (int k = 0; k <= N; ++k) {
    PuiseuxSeries g = substitute_series_diff(eq, T);
    if (g.is_zero()) return T;
    // linearisation: L[w] = J w + sum_s K_s D^s w
    PuiseuxSeries J(u);
    std::map<int, PuiseuxSeries> K;
    for (const auto& t : eq.terms()) {
      const Rational c = t.coeff.scalar;
      const long b = integer_exponent(t.exps[iy], "the dependent variable");
      PuiseuxSeries base = PuiseuxSeries::monomial(u, c, t.exps[iu]);
      if (b != 0) {
        PuiseuxSeries part = scaled(base * series_pow(T, b - 1), Rational(b));
        if (t.order > 0) part = part * derivative(T, t.order);
        J = J + part;
      }
      if (t.order > 0) {
        auto it = K.try_emplace(t.order, PuiseuxSeries(u)).first;
        it->second = it->second + base * series_pow(T, b);
      }
    }
    std::optional<Rational> lowest;
    auto consider = [&](const std::optional<Rational>& e) {
      if (e && (!lowest || *e < *lowest)) lowest = e;
    };
    consider(J.lead_exponent());
    for (const auto& [s, Ks] : K)
      if (!Ks.is_zero()) consider(*Ks.lead_exponent() - s);
    if (!lowest) fail(ErrorKind::Unsupported, "iteration stalls");
    const Rational kappa = *g.lead_exponent() - *lowest;
    Rational lead = 0;
    bool algebraic = J.lead_exponent() == lowest;
    if (algebraic) lead += J.terms().begin()->second;
    for (const auto& [s, Ks] : K)
      if (!Ks.is_zero() && *Ks.lead_exponent() - s == *lowest) lead += Ks.terms().begin()->second * falling(kappa, s);
    if (lead == 0)
      fail(ErrorKind::Unsupported, algebraic ? "iteration stalls"
                                             : "differential correction required; emit the perturbation equation instead");
    if (kappa <= T.terms().rbegin()->first) fail(ErrorKind::Invariant, "correction does not raise the order");
    if (k == N) return T.truncated(kappa);
    T.add_term(-g.terms().begin()->second / lead, kappa);
  }
  return T;
}

std::optional<Rational> residual_order_diff(const DiffPoly& eq, const PuiseuxSeries& s, const Rational& bound,
                                            const std::map<std::string, Rational>& params) {
  PuiseuxSeries exact(s.var());
  for (const auto& [e, c] : s.terms()) exact.add_term(c, e);
  PuiseuxSeries g = substitute_series_diff(eq.evaluate_params(params), exact);
  if (!g.is_zero() && *g.lead_exponent() < bound) return g.lead_exponent();
  return std::nullopt;
}

DiffPoly emit_perturbation_equation(const DiffPoly& eq, const PerturbationTrial& trial, const std::string& dependent,
                                    const std::string& independent) {
  const std::string y = !dependent.empty() ? dependent : eq.dependent() ? *eq.dependent() : eq.vars().back();
  std::string x = !independent.empty() ? independent : eq.independent() ? *eq.independent() : "";
  if (x.empty())
    for (const auto& v : eq.vars())
      if (v != y) {
        x = v;
        break;
      }
  const int order = eq.max_order();
  if (order > 2) fail(ErrorKind::Unsupported, "derivative order above 2 is not supported");

  std::vector<std::string> vars;
  for (const auto& v : eq.vars())
    if (v != y) vars.push_back(v);
  if (!x.empty() && std::find(vars.begin(), vars.end(), x) == vars.end()) vars.insert(vars.begin(), x);
  vars.push_back(trial.z);
  std::vector<std::string> markers;
  if (!trial.power_law) {
    markers.push_back(trial.y0);
    for (int k = 1; k <= order; ++k) markers.push_back(trial.y0 + "_" + (k == 1 ? x : x + x));
    vars.insert(vars.end(), markers.begin(), markers.end());
  }
  const bool has_pair = !x.empty() && (order > 0 || (trial.known && !trial.known->is_zero()));
  DiffPoly zero = has_pair ? DiffPoly(vars, x, trial.z) : DiffPoly(vars);
  auto idx = [&](const std::string& v) { return zero.var_index(v); };
  auto mono = [&](const Coeff& c, std::vector<std::pair<std::string, Rational>> e, int ord = 0) {
    DiffPoly p = zero;
    ExpVector ev(vars.size());
    for (const auto& [n, k] : e) ev[idx(n)] += k;
    p.add_term(c, ev, ord);
    return p;
  };

  // derivatives of y0 and of the known part
  std::vector<DiffPoly> Y0(3, zero), Kn(3, zero);
  for (int k = 0; k <= 2; ++k) {
    if (trial.power_law) {
      const auto& [c, rho] = *trial.power_law;
      Rational f = falling(rho, k);
      if (f != 0) Y0[k] = mono(c * Coeff(f), {{x, rho - k}});
    } else if (k <= order) {
      Y0[k] = mono(Coeff(1), {{markers[k], 1}});
    }
  }
  if (trial.known) {
    if (trial.known->vars().size() != 1 || trial.known->vars()[0] != x)
      fail(ErrorKind::Domain, "known corrections must be a polynomial in " + x);
    for (const auto& [m, c] : trial.known->terms()) {
      ParamMono pm = m.params;
      for (int k = 0; k <= 2; ++k) {
        Rational f = falling(m.exps[0], k);
        if (f != 0) Kn[k] = add(Kn[k], mono(Coeff(c * f, pm), {{x, m.exps[0] - k}}));
      }
    }
  }
  std::vector<DiffPoly> V(3, zero);
  V[0] = add(add(mono(Coeff(1), {}), Kn[0]), mono(Coeff(1), {{trial.z, 1}}));
  for (int k = 1; k <= order; ++k) V[k] = add(Kn[k], mono(Coeff(1), {}, k));
  std::vector<DiffPoly> Y(3, zero);
  Y[0] = mul(Y0[0], V[0]);
  if (order >= 1) Y[1] = add(mul(Y0[1], V[0]), mul(Y0[0], V[1]));
  if (order >= 2) Y[2] = add(add(mul(Y0[2], V[0]), mul(Y0[1], V[1]), 2), mul(Y0[0], V[2]));

  DiffPoly out = zero;
  const std::size_t iy = eq.var_index(y);
  for (const auto& t : eq.terms()) {
    std::vector<std::pair<std::string, Rational>> e;
    for (std::size_t i = 0; i < eq.vars().size(); ++i)
      if (i != iy && t.exps[i] != 0) e.emplace_back(eq.vars()[i], t.exps[i]);
    DiffPoly term = mono(t.coeff, e);
    const long b = integer_exponent(t.exps[iy], "the dependent variable");
    if (b < 0) fail(ErrorKind::Unsupported, "negative power of the dependent variable");
    for (long i = 0; i < b; ++i) term = mul(term, Y[0]);
    if (t.order > 0) term = mul(term, Y[t.order]);
    out = add(out, term);
  }
  return out;
}

}  // namespace toricnp
