#include "toricnp/groebner.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>

#include "toricnp/detail/gpoly.hpp"
#include "toricnp/error.hpp"

namespace toricnp {

namespace detail {

GPoly from_poly(const Poly& f, const MonomialOrder& ord) {
  GPoly g;
  for (const auto& [m, c] : f.terms()) {
    if (!m.params.is_one())
      fail(ErrorKind::Domain, "Groebner engine requires parameter-free coefficients (promote parameters to indeterminates)");
    Exp e(m.exps.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (m.exps[i] < 0 || !is_integer(m.exps[i]))
        fail(ErrorKind::Domain, "Gr\xc3\xb6" "bner engine requires non-negative exponents");
      e[i] = m.exps[i].get_num().get_si();
    }
    g.terms.push_back({std::move(e), c});
  }
  std::sort(g.terms.begin(), g.terms.end(),
            [&](const GTerm& a, const GTerm& b) { return ord.compare(a.exp, b.exp) > 0; });
  return g;
}

Poly to_poly(const GPoly& f, const std::vector<std::string>& vars) {
  Poly out(vars);
  for (const auto& t : f.terms) {
    ExpVector e(t.exp.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = t.exp[i];
    out.add_term(Coeff(t.coef), e);
  }
  return out;
}

bool divides(const Exp& a, const Exp& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exp lcm(const Exp& a, const Exp& b) {
  Exp out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

bool coprime(const Exp& a, const Exp& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

GPoly sub_scaled(const GPoly& f, const Rational& c, const Exp& shift, const GPoly& g, const MonomialOrder& ord) {
  GPoly out;
  out.terms.reserve(f.terms.size() + g.terms.size());
  std::size_t i = 0, j = 0;
  Exp shifted;
  auto shifted_exp = [&](std::size_t k) {
    shifted = g.terms[k].exp;
    for (std::size_t v = 0; v < shifted.size(); ++v) shifted[v] += shift[v];
    return shifted;
  };
  while (i < f.terms.size() || j < g.terms.size()) {
    if (j == g.terms.size()) {
      out.terms.push_back(f.terms[i++]);
      continue;
    }
    Exp ge = shifted_exp(j);
    if (i == f.terms.size()) {
      out.terms.push_back({std::move(ge), -c * g.terms[j++].coef});
      continue;
    }
    int cmp = ord.compare(f.terms[i].exp, ge);
    if (cmp > 0) {
      out.terms.push_back(f.terms[i++]);
    } else if (cmp < 0) {
      out.terms.push_back({std::move(ge), -c * g.terms[j++].coef});
    } else {
      Rational v = f.terms[i].coef - c * g.terms[j].coef;
      if (v != 0) out.terms.push_back({std::move(ge), v});
      ++i;
      ++j;
    }
  }
  return out;
}

GPoly normal_form(GPoly f, const std::vector<GPoly>& g, const MonomialOrder& ord) {
  GPoly rem;
  while (!f.is_zero()) {
    const GTerm& lt = f.lead();
    const GPoly* divisor = nullptr;
    for (const auto& p : g)
      if (!p.is_zero() && divides(p.lead().exp, lt.exp)) {
        divisor = &p;
        break;
      }
    if (!divisor) {
      rem.terms.push_back(lt);
      f.terms.erase(f.terms.begin());
      continue;
    }
    Exp shift(lt.exp.size());
    for (std::size_t v = 0; v < shift.size(); ++v) shift[v] = lt.exp[v] - divisor->lead().exp[v];
    f = sub_scaled(f, lt.coef / divisor->lead().coef, shift, *divisor, ord);
  }
  return rem;
}

void make_monic(GPoly& f) {
  if (f.is_zero()) return;
  Rational inv = 1 / f.lead().coef;
  for (auto& t : f.terms) t.coef *= inv;
}

}  // namespace detail

namespace {

using detail::Exp;
using detail::GPoly;

GPoly s_polynomial(const GPoly& f, const GPoly& g, const MonomialOrder& ord) {
  Exp l = detail::lcm(f.lead().exp, g.lead().exp);
  Exp sf(l.size()), sg(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    sf[i] = l[i] - f.lead().exp[i];
    sg[i] = l[i] - g.lead().exp[i];
  }
  GPoly zero;
  GPoly a = detail::sub_scaled(zero, -1 / f.lead().coef, sf, f, ord);
  return detail::sub_scaled(a, 1 / g.lead().coef, sg, g, ord);
}

std::vector<GPoly> buchberger(std::vector<GPoly> input, const MonomialOrder& ord) {
  std::vector<GPoly> basis;
  struct Pair {
    Exp lcm;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  auto pair_less = [&](const Pair& a, const Pair& b) {
    int c = ord.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  };
  // Pairs already handled or discarded, for the chain criterion.
  std::set<std::pair<std::size_t, std::size_t>> queued;

  auto add = [&](GPoly p) {
    detail::make_monic(p);
    const std::size_t k = basis.size();
    basis.push_back(std::move(p));
    for (std::size_t i = 0; i < k; ++i) {
      if (basis[i].is_zero()) continue;
      pairs.push_back({detail::lcm(basis[i].lead().exp, basis[k].lead().exp), i, k});
      queued.insert({i, k});
    }
  };

  // Seed with the inputs reduced against each other as they arrive.
  std::sort(input.begin(), input.end(), [&](const GPoly& a, const GPoly& b) {
    return ord.compare(a.lead().exp, b.lead().exp) < 0;
  });
  for (auto& p : input) {
    GPoly r = detail::normal_form(std::move(p), basis, ord);
    if (!r.is_zero()) add(std::move(r));
  }

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), pair_less);
    Pair pr = *it;
    pairs.erase(it);
    queued.erase({pr.i, pr.j});
    const GPoly& f = basis[pr.i];
    const GPoly& g = basis[pr.j];
    if (detail::coprime(f.lead().exp, g.lead().exp)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j || basis[k].is_zero()) continue;
      if (!detail::divides(basis[k].lead().exp, pr.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return a < b ? std::pair{a, b} : std::pair{b, a}; };
      chain = !queued.count(key(pr.i, k)) && !queued.count(key(pr.j, k));
    }
    if (chain) continue;
    GPoly r = detail::normal_form(s_polynomial(f, g, ord), basis, ord);
    if (!r.is_zero()) add(std::move(r));
  }
  return basis;
}

std::vector<GPoly> reduce_basis(std::vector<GPoly> basis, const MonomialOrder& ord) {
  // minimal basis
  std::vector<GPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      if (!detail::divides(basis[j].lead().exp, basis[i].lead().exp)) continue;
      // equal leading monomials: keep the earliest
      redundant = basis[j].lead().exp != basis[i].lead().exp || j < i;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  // inter-reduce tails
  std::vector<GPoly> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<GPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    GPoly head;
    head.terms.push_back(minimal[i].lead());
    GPoly tail;
    tail.terms.assign(minimal[i].terms.begin() + 1, minimal[i].terms.end());
    GPoly r = detail::normal_form(std::move(tail), others, ord);
    head.terms.insert(head.terms.end(), r.terms.begin(), r.terms.end());
    detail::make_monic(head);
    out.push_back(std::move(head));
  }
  std::sort(out.begin(), out.end(),
            [&](const GPoly& a, const GPoly& b) { return ord.compare(a.lead().exp, b.lead().exp) > 0; });
  return out;
}

std::vector<Poly> lift(const std::vector<GPoly>& g, const std::vector<std::string>& vars) {
  std::vector<Poly> out;
  for (const auto& p : g) out.push_back(detail::to_poly(p, vars));
  return out;
}

std::string fresh_name(const std::vector<std::string>& vars, const std::string& stem) {
  std::string name = stem;
  while (std::find(vars.begin(), vars.end(), name) != vars.end()) name += "_";
  return name;
}

Poly monomial_poly(const std::vector<std::string>& vars, const IntVector& e) {
  ExpVector ev(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) ev[i] = Rational(e[i]);
  return Poly::monomial(vars, Coeff(1), ev);
}

}  // namespace

IntVector Binomial::difference() const {
  IntVector d(vplus.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = vplus[i] - vminus[i];
  return d;
}

Poly Binomial::to_poly(const std::vector<std::string>& vars) const {
  return monomial_poly(vars, vplus) - monomial_poly(vars, vminus);
}

std::string to_string(const Binomial& b, const std::vector<std::string>& vars) {
  auto mono = [&](const IntVector& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += vars[i];
      if (e[i] != 1) s += "^" + e[i].get_str();
    }
    return s.empty() ? std::string("1") : s;
  };
  return mono(b.vplus) + " - " + mono(b.vminus);
}

Ideal groebner_basis(const std::vector<std::string>& vars, const std::vector<Poly>& gens, const MonomialOrder& ord) {
  std::vector<GPoly> in;
  for (const auto& g : gens) {
    if (g.vars() != vars) fail(ErrorKind::Domain, "groebner_basis: indeterminate lists differ");
    GPoly p = detail::from_poly(g, ord);
    if (!p.is_zero()) in.push_back(std::move(p));
  }
  Ideal out;
  out.vars = vars;
  out.order = ord;
  out.reduced = true;
  if (in.empty()) return out;
  out.generators = lift(reduce_basis(buchberger(std::move(in), ord), ord), vars);
  return out;
}

Ideal groebner_basis(const std::vector<Poly>& gens, const MonomialOrder& ord) {
  if (gens.empty()) return Ideal{{}, {}, ord, true};
  return groebner_basis(gens.front().vars(), gens, ord);
}

Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& first_block) {
  std::vector<std::string> order_vars, rest;
  for (const auto& v : ideal.vars) {
    bool in_block = std::find(first_block.begin(), first_block.end(), v) != first_block.end();
    (in_block ? order_vars : rest).push_back(v);
  }
  const std::size_t block = order_vars.size();
  order_vars.insert(order_vars.end(), rest.begin(), rest.end());
  std::vector<Poly> gens;
  for (const auto& g : ideal.generators) gens.push_back(g.with_vars(order_vars));
  Ideal gb = groebner_basis(order_vars, gens, MonomialOrder::elimination(block));
  std::vector<Poly> kept;
  for (const auto& g : gb.generators) {
    bool free_of_block = true;
    for (const auto& [m, c] : g.terms())
      for (std::size_t i = 0; i < block; ++i)
        if (m.exps[i] != 0) free_of_block = false;
    if (free_of_block) kept.push_back(g.with_vars(rest));
  }
  // The surviving elements are a Groebner basis for the induced grevlex
  // order; re-running reduction fixes ordering and inter-reduction.
  return groebner_basis(rest, kept, MonomialOrder::grevlex());
}

Ideal saturate(const Ideal& ideal, const ExpVector& m) {
  if (m.size() != ideal.vars.size()) fail(ErrorKind::Domain, "saturate: monomial length mismatch");
  const std::string t = fresh_name(ideal.vars, "_t");
  std::vector<std::string> vars = ideal.vars;
  vars.push_back(t);
  Ideal ext{vars, {}, ideal.order, false};
  for (const auto& g : ideal.generators) ext.generators.push_back(g.with_vars(vars));
  ExpVector tm = m;
  tm.push_back(1);
  ext.generators.push_back(Poly::monomial(vars, Coeff(1), tm) - Poly::constant(vars, Coeff(1)));
  Ideal out = eliminate(ext, {t});
  return out;
}

bool ideal_membership(const Poly& f, const Ideal& ideal) {
  if (f.is_zero()) return true;
  if (ideal.generators.empty()) return false;
  if (!ideal.reduced) return ideal_membership(f, groebner_basis(ideal.vars, ideal.generators, ideal.order));
  return reduce(f.with_vars(ideal.vars), ideal.generators, ideal.order).is_zero();
}

Ideal binomial_ideal(const std::vector<Binomial>& gens, const std::vector<std::string>& names) {
  Ideal out{names, {}, MonomialOrder::grevlex(), false};
  for (const auto& b : gens) out.generators.push_back(b.to_poly(names));
  return out;
}

std::vector<Binomial> to_binomials(const Ideal& ideal) {
  std::vector<Binomial> out;
  const std::size_t n = ideal.vars.size();
  for (const auto& g : ideal.generators) {
    if (g.size() != 2) fail(ErrorKind::Invariant, "toric basis element is not a binomial");
    std::vector<std::pair<Monomial, Rational>> t(g.terms().begin(), g.terms().end());
    if (t[0].second + t[1].second != 0 || abs(t[0].second) != 1)
      fail(ErrorKind::Invariant, "toric basis element has coefficients other than +-1");
    if (t[0].second < 0) std::swap(t[0], t[1]);
    Binomial b{IntVector(n), IntVector(n)};
    for (std::size_t i = 0; i < n; ++i) {
      b.vplus[i] = t[0].first.exps[i].get_num();
      b.vminus[i] = t[1].first.exps[i].get_num();
    }
    // orient so that the leading monomial is the positive side
    const MonomialOrder& ord = ideal.order;
    if (ord.compare(b.vplus, b.vminus) < 0) std::swap(b.vplus, b.vminus);
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

// x^lead - x^tail with lead > tail. Lattice ideals stay in this form through
// S-pairs and reduction, and the normal form of a monomial is a monomial.
IntVector to_ivec(const Exp& e) { return IntVector(e.begin(), e.end()); }

struct PureBinomial {
  Exp lead;
  Exp tail;
};

std::optional<PureBinomial> pure_binomial(Exp a, Exp b, const MonomialOrder& ord) {
  const int c = ord.compare(a, b);
  if (c == 0) return std::nullopt;
  if (c < 0) std::swap(a, b);
  return PureBinomial{std::move(a), std::move(b)};
}

Exp monomial_normal_form(Exp m, const std::vector<PureBinomial>& g) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g)
      if (detail::divides(p.lead, m)) {
        for (std::size_t v = 0; v < m.size(); ++v) m[v] += p.tail[v] - p.lead[v];
        changed = true;
        break;
      }
  }
  return m;
}

std::vector<PureBinomial> binomial_basis(const std::vector<PureBinomial>& input, const MonomialOrder& ord) {
  std::vector<PureBinomial> basis;
  struct Pair {
    Exp lcm;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> queued;
  auto add = [&](PureBinomial p) {
    const std::size_t k = basis.size();
    basis.push_back(std::move(p));
    for (std::size_t i = 0; i < k; ++i) {
      pairs.push_back({detail::lcm(basis[i].lead, basis[k].lead), i, k});
      queued.insert({i, k});
    }
  };
  auto reduce = [&](const Exp& a, const Exp& b) {
    return pure_binomial(monomial_normal_form(a, basis), monomial_normal_form(b, basis), ord);
  };
  for (const auto& p : input)
    if (auto r = reduce(p.lead, p.tail)) add(std::move(*r));

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      int c = ord.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    Pair pr = *it;
    *it = pairs.back();
    pairs.pop_back();
    queued.erase({pr.i, pr.j});
    const PureBinomial& f = basis[pr.i];
    const PureBinomial& g = basis[pr.j];
    if (detail::coprime(f.lead, g.lead)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j || !detail::divides(basis[k].lead, pr.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return a < b ? std::pair{a, b} : std::pair{b, a}; };
      chain = !queued.count(key(pr.i, k)) && !queued.count(key(pr.j, k));
    }
    if (chain) continue;
    Exp a = pr.lcm, b = pr.lcm;
    for (std::size_t v = 0; v < a.size(); ++v) {
      a[v] += f.tail[v] - f.lead[v];
      b[v] += g.tail[v] - g.lead[v];
    }
    if (auto r = reduce(a, b)) add(std::move(*r));
  }

  std::vector<PureBinomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j)
      if (i != j && detail::divides(basis[j].lead, basis[i].lead))
        redundant = basis[j].lead != basis[i].lead || j < i;
    if (!redundant) minimal.push_back(basis[i]);
  }
  for (auto& p : minimal) p.tail = monomial_normal_form(p.tail, minimal);
  std::sort(minimal.begin(), minimal.end(),
            [&](const PureBinomial& a, const PureBinomial& b) { return ord.compare(a.lead, b.lead) > 0; });
  return minimal;
}

// (I : x_i^inf) for every i in turn, each by eliminating t from I + <t x_i - 1>.
std::vector<PureBinomial> saturate_all(std::vector<PureBinomial> gens, std::size_t n) {
  const MonomialOrder elim = MonomialOrder::elimination(1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<PureBinomial> ext;
    for (const auto& g : gens) {
      Exp l(n + 1, 0), t(n + 1, 0);
      std::copy(g.lead.begin(), g.lead.end(), l.begin() + 1);
      std::copy(g.tail.begin(), g.tail.end(), t.begin() + 1);
      ext.push_back({std::move(l), std::move(t)});
    }
    Exp tx(n + 1, 0);
    tx[0] = 1;
    tx[i + 1] = 1;
    ext.push_back({tx, Exp(n + 1, 0)});
    gens.clear();
    for (const auto& g : binomial_basis(ext, elim)) {
      if (g.lead[0] != 0 || g.tail[0] != 0) continue;
      gens.push_back({Exp(g.lead.begin() + 1, g.lead.end()), Exp(g.tail.begin() + 1, g.tail.end())});
    }
  }
  return binomial_basis(gens, MonomialOrder::grevlex());
}

}  // namespace

std::vector<Binomial> toric_ideal(const IntMatrix& a, const std::vector<std::string>& names) {
  if (names.size() != a.rows()) fail(ErrorKind::Domain, "toric_ideal: one name per matrix row required");
  // short lattice vectors keep the saturation steps at low degree
  const IntMatrix k = lll_reduce(integer_kernel(a));
  if (k.cols() == 0) return {};
  std::vector<Binomial> lattice;
  for (std::size_t j = 0; j < k.cols(); ++j) {
    Binomial b{IntVector(a.rows()), IntVector(a.rows())};
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const Integer& v = k(i, j);
      if (v > 0) b.vplus[i] = v;
      if (v < 0) b.vminus[i] = -v;
    }
    lattice.push_back(std::move(b));
  }
  std::vector<PureBinomial> gens;
  for (const auto& b : lattice) {
    Exp p(names.size()), m(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
      p[i] = b.vplus[i].get_si();
      m[i] = b.vminus[i].get_si();
    }
    if (auto pb = pure_binomial(p, m, MonomialOrder::grevlex())) gens.push_back(*pb);
  }
  Ideal sat{names, {}, MonomialOrder::grevlex(), true};
  for (const auto& g : saturate_all(gens, names.size()))
    sat.generators.push_back(monomial_poly(names, to_ivec(g.lead)) - monomial_poly(names, to_ivec(g.tail)));
  return to_binomials(sat);
}

std::vector<Binomial> toric_ideal_by_elimination(const IntMatrix& a, const std::vector<std::string>& names) {
  if (names.size() != a.rows()) fail(ErrorKind::Domain, "toric_ideal: one name per matrix row required");
  const std::size_t d = a.rows(), k = a.cols();
  std::vector<std::string> vars, block;
  for (std::size_t j = 0; j < k; ++j) block.push_back(fresh_name(names, "_z" + std::to_string(j)));
  for (std::size_t j = 0; j < k; ++j) block.push_back(fresh_name(names, "_w" + std::to_string(j)));
  vars = block;
  vars.insert(vars.end(), names.begin(), names.end());
  Ideal ideal{vars, {}, MonomialOrder::grevlex(), false};
  for (std::size_t i = 0; i < d; ++i) {
    ExpVector image(vars.size());
    for (std::size_t j = 0; j < k; ++j) {
      const long e = a(i, j).get_si();
      if (e > 0) image[j] = e;
      if (e < 0) image[k + j] = -e;
    }
    ideal.generators.push_back(Poly::variable(vars, names[i]) - Poly::monomial(vars, Coeff(1), image));
  }
  for (std::size_t j = 0; j < k; ++j) {
    ExpVector zw(vars.size());
    zw[j] = 1;
    zw[k + j] = 1;
    ideal.generators.push_back(Poly::monomial(vars, Coeff(1), zw) - Poly::constant(vars, Coeff(1)));
  }
  return to_binomials(eliminate(ideal, block));
}

}  // namespace toricnp
