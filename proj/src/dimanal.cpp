#include "toricnp/dimanal.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace toricnp {

namespace {

using RatVector = std::vector<Rational>;

RatVector to_rat(const DimVector& d) { return RatVector(d.begin(), d.end()); }

DimVector to_dim(const RatVector& r, const std::string& what) {
  DimVector d(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!is_integer(r[i])) fail(ErrorKind::Unsupported, what + " has a fractional dimension exponent");
    d[i] = r[i].get_num();
  }
  return d;
}

void axpy(RatVector& acc, const Rational& a, const DimVector& x) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += a * Rational(x[i]);
}

const DimVector* lookup(const DimMap& dims, const std::string& name) {
  auto it = dims.find(name);
  return it == dims.end() ? nullptr : &it->second;
}

bool is_const(const DimensionedSystem& sys, const std::string& name) {
  return std::find(sys.consts.begin(), sys.consts.end(), name) != sys.consts.end();
}

}  // namespace

std::string dim_to_string(const DimVector& d, const std::vector<std::string>& base_dims) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += i < base_dims.size() ? base_dims[i] : "z" + std::to_string(i);
    if (d[i] != 1) out += "^" + d[i].get_str();
  }
  return out.empty() ? "1" : out;
}

DimVector term_dimension(const DiffPoly& eq, const DiffTerm& term, const DimMap& dims, std::size_t n_dims) {
  RatVector acc(n_dims);
  auto need = [&](const std::string& name) -> const DimVector& {
    const DimVector* d = lookup(dims, name);
    if (!d) fail(ErrorKind::Domain, "no dimension assigned to '" + name + "'");
    if (d->size() != n_dims) fail(ErrorKind::Domain, "dimension vector of '" + name + "' has the wrong length");
    return *d;
  };
  for (std::size_t i = 0; i < term.exps.size(); ++i)
    if (term.exps[i] != 0) axpy(acc, term.exps[i], need(eq.vars()[i]));
  for (const auto& [name, e] : term.coeff.params.factors()) axpy(acc, e, need(name));
  if (term.order > 0) {
    axpy(acc, 1, need(*eq.dependent()));
    axpy(acc, -term.order, need(*eq.independent()));
  }
  return to_dim(acc, "term " + term_to_string(eq, term));
}

DimVector check_homogeneity(const DimensionedSystem& sys, const DimMap& dims) {
  const std::size_t n = sys.base_dims.size();
  std::vector<TermDimension> report;
  for (const auto& t : sys.equation.terms())
    report.push_back({term_to_string(sys.equation, t), term_dimension(sys.equation, t, dims, n)});
  if (report.empty()) return DimVector(n);
  bool same = std::all_of(report.begin(), report.end(), [&](const TermDimension& t) { return t.dim == report[0].dim; });
  if (same) return report[0].dim;
  std::ostringstream os;
  os << "equation is not dimensionally homogeneous:";
  for (const auto& t : report) os << "\n  [" << t.term << "] = " << dim_to_string(t.dim, sys.base_dims);
  throw InhomogeneousError(os.str(), std::move(report));
}

std::vector<std::string> assign_uniform_variables(DimensionedSystem& sys) {
  std::vector<std::string> notices;
  const auto& eq = sys.equation;
  for (const auto& v : sys.vars) {
    if (sys.var_dims.count(v)) continue;
    if (eq.independent() == v && eq.has_derivatives())
      fail(ErrorKind::Domain, "independent variable '" + v + "' needs a declared dimension");
    const std::size_t idx = eq.var_index(v);
    std::optional<Rational> degree;
    bool uniform = true;
    for (const auto& t : eq.terms()) {
      Rational d = t.exps[idx] + (t.order > 0 && eq.dependent() == v ? 1 : 0);
      if (degree && *degree != d) uniform = false;
      degree = d;
    }
    if (!uniform) fail(ErrorKind::Domain, "variable '" + v + "' has no declared dimension and non-uniform degree");
    sys.var_dims[v] = DimVector(sys.base_dims.size());
    notices.push_back("variable '" + v + "' appears with uniform degree " + (degree ? degree->get_str() : "0") +
                      " in every term; its dimension cancels and it is treated as dimensionless");
  }
  return notices;
}

DimVector inference_beta(const DimensionedSystem& sys) {
  const std::size_t n = sys.base_dims.size();
  DimMap known = sys.var_dims;
  known.insert(sys.const_dims.begin(), sys.const_dims.end());
  std::vector<TermDimension> fixed;
  for (const auto& t : sys.equation.terms()) {
    bool all_known = true;
    for (const auto& [name, e] : t.coeff.params.factors()) all_known = all_known && known.count(name);
    if (all_known)
      fixed.push_back({term_to_string(sys.equation, t), term_dimension(sys.equation, t, known, n)});
  }
  if (fixed.empty()) return DimVector(n);
  for (const auto& f : fixed) {
    if (f.dim == fixed[0].dim) continue;
    std::ostringstream os;
    os << "terms without unknown constants disagree in dimension:";
    for (const auto& g : fixed) os << "\n  [" << g.term << "] = " << dim_to_string(g.dim, sys.base_dims);
    throw InhomogeneousError(os.str(), fixed);
  }
  return fixed[0].dim;
}

DimMap infer_constant_dimensions(const DimensionedSystem& sys, const DimMap& var_dims, const DimVector& beta) {
  const std::size_t n = sys.base_dims.size();
  DimMap known = var_dims;
  known.insert(sys.const_dims.begin(), sys.const_dims.end());
  DimMap inferred;
  std::map<std::string, std::string> source;  // constant -> term that forced it
  const auto& eq = sys.equation;

  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& t : eq.terms()) {
      std::vector<std::pair<std::string, Rational>> unknown;
      for (const auto& [name, e] : t.coeff.params.factors())
        if (!known.count(name)) unknown.emplace_back(name, e);
      if (unknown.size() != 1) continue;
      const auto& [name, e] = unknown.front();
      // [c]*e = beta - (dimension of the rest of the term)
      DiffTerm rest = t;
      rest.coeff.params.set(name, 0);
      RatVector forced = to_rat(beta);
      axpy(forced, -1, term_dimension(eq, rest, known, n));
      for (auto& x : forced) x /= e;
      known[name] = inferred[name] = to_dim(forced, "constant '" + name + "'");
      source[name] = term_to_string(eq, t);
      progress = true;
    }
    // Every term whose constants are all known must now match beta.
    for (const auto& t : eq.terms()) {
      bool all_known = true;
      for (const auto& [name, e] : t.coeff.params.factors()) all_known = all_known && known.count(name);
      if (!all_known) continue;
      DimVector d = term_dimension(eq, t, known, n);
      if (d == beta) continue;
      for (const auto& [name, e] : t.coeff.params.factors()) {
        if (!inferred.count(name)) continue;
        DiffTerm rest = t;
        rest.coeff.params.set(name, 0);
        RatVector other = to_rat(beta);
        axpy(other, -1, term_dimension(eq, rest, known, n));
        for (auto& x : other) x /= e;
        std::ostringstream os;
        os << "inconsistent dimensions for constant '" << name << "': "
           << dim_to_string(inferred.at(name), sys.base_dims) << " (from " << source.at(name) << ") vs ";
        bool integral = std::all_of(other.begin(), other.end(), [](const Rational& q) { return is_integer(q); });
        os << (integral ? dim_to_string(to_dim(other, name), sys.base_dims) : std::string("a fractional dimension"))
           << " (from " << term_to_string(eq, t) << ")";
        throw InhomogeneousError(os.str(), {{term_to_string(eq, t), d}});
      }
      std::ostringstream os;
      os << "term [" << term_to_string(eq, t) << "] has dimension " << dim_to_string(d, sys.base_dims)
         << " but the common dimension is " << dim_to_string(beta, sys.base_dims);
      throw InhomogeneousError(os.str(), {{term_to_string(eq, t), d}});
    }
  }
  for (const auto& c : sys.consts)
    if (!known.count(c)) fail(ErrorKind::Unsupported, "cannot determine the dimension of constant '" + c + "'");
  return inferred;
}

VariableConstantIdeal variable_constant_ideal(const DimensionedSystem& sys, const DimMap& full_dims) {
  VariableConstantIdeal out;
  out.names = sys.vars;
  out.names.insert(out.names.end(), sys.consts.begin(), sys.consts.end());
  const std::size_t n = sys.base_dims.size();
  out.matrix = IntMatrix(out.names.size(), n);
  for (std::size_t i = 0; i < out.names.size(); ++i) {
    const DimVector* d = lookup(full_dims, out.names[i]);
    if (!d) fail(ErrorKind::Domain, "no dimension assigned to '" + out.names[i] + "'");
    for (std::size_t j = 0; j < n; ++j) out.matrix(i, j) = (*d)[j];
  }
  out.degenerate = out.matrix.is_zero();
  out.generators = toric_ideal(out.matrix, out.names);
  return out;
}

Rational Group::exponent(const std::string& symbol) const {
  for (const auto& [name, e] : exponents)
    if (name == symbol) return e;
  return 0;
}

namespace {

std::string capitalized(const std::string& name) {
  std::string out = name;
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::string unique_name(std::string name, const std::set<std::string>& taken) {
  while (taken.count(name)) name += "_";
  return name;
}

// Group read off the single generator of I ∩ k[anchor, refs].
std::optional<Group> group_from_elimination(const Ideal& ideal, const std::vector<std::string>& names,
                                            const std::string& anchor, const std::vector<std::string>& refs) {
  std::vector<std::string> block;
  for (const auto& s : names)
    if (s != anchor && std::find(refs.begin(), refs.end(), s) == refs.end()) block.push_back(s);
  Ideal elim = eliminate(ideal, block);
  if (elim.generators.empty()) return std::nullopt;
  const std::size_t a = std::find(elim.vars.begin(), elim.vars.end(), anchor) - elim.vars.begin();
  auto key = [&](const Binomial& b) {
    Integer deg = 0;
    for (std::size_t i = 0; i < b.vplus.size(); ++i) deg += b.vplus[i] + b.vminus[i];
    return std::pair<Integer, Integer>(abs(b.vplus[a] - b.vminus[a]), deg);
  };
  std::optional<Binomial> best;
  for (const auto& b : to_binomials(elim)) {
    if (b.vplus[a] == b.vminus[a]) continue;
    if (!best || key(b) < key(*best)) best = b;
  }
  if (!best) return std::nullopt;
  IntVector diff = best->difference();
  const bool flip = diff[a] < 0;
  Group g;
  g.anchor = anchor;
  for (const auto& s : names) {
    auto it = std::find(elim.vars.begin(), elim.vars.end(), s);
    if (it == elim.vars.end()) continue;
    Integer e = diff[it - elim.vars.begin()];
    if (flip) e = -e;
    if (e != 0) g.exponents.emplace_back(s, Rational(e));
  }
  return g;
}

}  // namespace

GroupSelection select_groups(const VariableConstantIdeal& vc, const DimensionedSystem& sys) {
  GroupSelection out;
  const std::size_t nv = sys.vars.size();
  // reference constants: greedy independent rows in declaration order
  std::vector<IntVector> rows;
  std::vector<std::string> others;
  for (std::size_t i = 0; i < sys.consts.size(); ++i) {
    rows.push_back(vc.matrix.row(nv + i));
    IntMatrix m = IntMatrix::from_columns(vc.matrix.cols(), rows);
    if (rank(m) == rows.size()) {
      out.reference_consts.push_back(sys.consts[i]);
    } else {
      rows.pop_back();
      others.push_back(sys.consts[i]);
    }
  }
  Ideal ideal = binomial_ideal(vc.generators, vc.names);

  std::set<std::string> taken(vc.names.begin(), vc.names.end());
  for (const auto& v : sys.vars) {
    auto g = group_from_elimination(ideal, vc.names, v, out.reference_consts);
    // a power of v only: widen by one further constant to reach v^{\pm 1}
    for (std::size_t i = 0; g && abs(g->exponent(v)) != 1 && i < others.size(); ++i) {
      auto keep = out.reference_consts;
      keep.push_back(others[i]);
      auto wider = group_from_elimination(ideal, vc.names, v, keep);
      if (wider && abs(wider->exponent(v)) == 1) g = wider;
    }
    if (!g) {
      out.failures.push_back("cannot separate variable " + v);
      continue;
    }
    g->kind = Group::Kind::VariableScaling;
    g->name = unique_name(capitalized(v), taken);
    taken.insert(g->name);
    out.groups.push_back(std::move(*g));
  }
  int counter = 0;
  for (const auto& c : others) {
    auto g = group_from_elimination(ideal, vc.names, c, out.reference_consts);
    if (!g) {
      out.failures.push_back("no dimensionless group for constant " + c);
      continue;
    }
    g->kind = Group::Kind::ConstantOnly;
    g->name = unique_name(others.size() == 1 ? std::string("R") : "R" + std::to_string(++counter), taken);
    taken.insert(g->name);
    out.groups.push_back(std::move(*g));
  }
  return out;
}

Group root_extract_group(const Group& g, long k) {
  if (k <= 0) fail(ErrorKind::Domain, "root extraction needs a positive integer");
  const Rational ea = g.exponent(g.anchor);
  Rational q = ea / k;
  if (!is_integer(q)) fail(ErrorKind::Domain, "exponent of '" + g.anchor + "' in group " + g.name + " is not divisible by " + std::to_string(k));
  Group out = g;
  for (auto& [name, e] : out.exponents) e /= k;
  return out;
}

bool is_dimensionless(const Group& g, const DimMap& dims, std::size_t n_dims) {
  RatVector acc(n_dims);
  for (const auto& [name, e] : g.exponents) {
    const DimVector* d = lookup(dims, name);
    if (!d) fail(ErrorKind::Domain, "no dimension assigned to '" + name + "'");
    axpy(acc, e, *d);
  }
  return std::all_of(acc.begin(), acc.end(), [](const Rational& q) { return q == 0; });
}

DiffPoly nondimensionalize(const DimensionedSystem& sys, const std::vector<Group>& groups) {
  const DiffPoly& eq = sys.equation;
  std::vector<const Group*> const_groups;
  for (const auto& g : groups)
    if (g.kind == Group::Kind::ConstantOnly) const_groups.push_back(&g);

  // v = G * scale(v)
  std::map<std::string, ParamMono> scale;
  std::map<std::string, std::string> renamed;
  std::vector<std::string> new_vars;
  for (const auto& v : sys.vars) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.kind == Group::Kind::VariableScaling && g.anchor == v;
    });
    if (it == groups.end()) fail(ErrorKind::Domain, "no variable group for '" + v + "'");
    Group g = *it;
    Rational ev = g.exponent(v);
    if (ev < 0) {
      for (auto& [name, e] : g.exponents) e = -e;
      ev = -ev;
    }
    if (!is_integer(ev)) fail(ErrorKind::Domain, "group " + g.name + " has a fractional power of '" + v + "'");
    if (ev != 1) g = root_extract_group(g, ev.get_num().get_si());
    ParamMono s;
    for (const auto& [name, e] : g.exponents) {
      if (name == v) continue;
      if (!is_const(sys, name))
        fail(ErrorKind::Domain, "group " + g.name + " mixes variables '" + v + "' and '" + name + "'");
      s.set(name, -e);
    }
    scale[v] = s;
    renamed[v] = g.name;
    new_vars.push_back(g.name);
  }

  std::optional<std::string> indep, dep;
  if (eq.independent()) indep = renamed.at(*eq.independent());
  if (eq.dependent()) dep = renamed.at(*eq.dependent());
  DiffPoly out(new_vars, indep, dep);

  std::vector<DiffTerm> transformed;
  for (const auto& t : eq.terms()) {
    ParamMono p = t.coeff.params;
    for (std::size_t i = 0; i < t.exps.size(); ++i)
      if (t.exps[i] != 0) p = p * scale.at(eq.vars()[i]).pow(t.exps[i]);
    if (t.order > 0) p = p * scale.at(*eq.dependent()) * scale.at(*eq.independent()).pow(-t.order);
    transformed.push_back({Coeff(t.coeff.scalar, p), t.exps, t.order});
  }
  if (transformed.empty()) return out;
  const Coeff divisor(abs(transformed.front().coeff.scalar), transformed.front().coeff.params);
  const Coeff inv = divisor.inverse();

  for (auto& t : transformed) {
    Coeff c = t.coeff * inv;
    // rewrite the constant power product over the constant-only groups
    std::vector<std::vector<Rational>> m(sys.consts.size(), std::vector<Rational>(const_groups.size()));
    std::vector<Rational> rhs(sys.consts.size());
    for (std::size_t i = 0; i < sys.consts.size(); ++i) {
      rhs[i] = c.params.exponent(sys.consts[i]);
      for (std::size_t j = 0; j < const_groups.size(); ++j) m[i][j] = const_groups[j]->exponent(sys.consts[i]);
    }
    ParamMono gp;
    bool all_zero = std::all_of(rhs.begin(), rhs.end(), [](const Rational& q) { return q == 0; });
    if (!all_zero) {
      auto sol = const_groups.empty() ? std::nullopt : solve_rational(m, rhs);
      if (!sol) {
        DiffPoly shown(eq.vars(), eq.independent(), eq.dependent());
        fail(ErrorKind::Domain, "coefficient " + to_string(c.params) +
                                    " is not a product of the constant-only groups (insufficient group set)");
      }
      for (std::size_t j = 0; j < const_groups.size(); ++j) gp.set(const_groups[j]->name, (*sol)[j]);
    }
    out.add_term(Coeff(c.scalar, gp), t.exps, t.order);
  }
  return out;
}

std::string to_string(const Group& g) {
  std::string rhs;
  for (const auto& [name, e] : g.exponents) {
    if (!rhs.empty()) rhs += '*';
    rhs += name;
    if (e != 1) rhs += is_integer(e) ? "^" + e.get_str() : "^(" + e.get_str() + ")";
  }
  return g.name + " = " + (rhs.empty() ? "1" : rhs);
}

}  // namespace toricnp
