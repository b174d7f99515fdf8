#include "toricnp/report.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "toricnp/error.hpp"
#include "toricnp/groebner.hpp"

namespace toricnp {

namespace {

json num(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json vec(std::span<const Integer> v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(num(z));
  return a;
}

std::string point_str(std::span<const Integer> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

std::string rat_list(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

json header(const char* command) { return json{{"schema", 1}, {"command", command}}; }

const char* kind_name(Group::Kind k) { return k == Group::Kind::VariableScaling ? "variable" : "constant"; }

DimVector group_dimension(const Group& g, const DimMap& dims, std::size_t n) {
  std::vector<Rational> acc(n, 0);
  for (const auto& [s, e] : g.exponents) {
    auto it = dims.find(s);
    if (it == dims.end()) fail(ErrorKind::Domain, "no dimension assigned to '" + s + "'");
    for (std::size_t j = 0; j < n; ++j) acc[j] += e * Rational(it->second[j]);
  }
  DimVector out(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_integer(acc[j])) fail(ErrorKind::Domain, "group " + g.name + " has a fractional dimension");
    out[j] = acc[j].get_num();
  }
  return out;
}

Rational numeric_value(const Poly& p, const std::string& what) {
  if (p.has_params()) {
    std::set<std::string> missing;
    for (const auto& [m, c] : p.terms())
      for (const auto& [n, e] : m.params.factors()) missing.insert(n);
    std::string names;
    for (const auto& n : missing) names += (names.empty() ? "" : ", ") + n;
    fail(ErrorKind::Parse, "missing values for " + names + " in " + what + " (use --params)");
  }
  Rational v = 0;
  for (const auto& [m, c] : p.terms()) v += c;
  return v;
}

void require_params(const DiffPoly& eq) {
  std::set<std::string> missing;
  for (const auto& t : eq.terms())
    for (const auto& [n, e] : t.coeff.params.factors()) missing.insert(n);
  if (missing.empty()) return;
  std::string names;
  for (const auto& n : missing) names += (names.empty() ? "" : ", ") + n;
  fail(ErrorKind::Parse, "missing values for " + names + " (use --params)");
}

const DistinguishedFacet& pick_facet(const PolytopeResult& p, std::size_t index) {
  if (p.distinguished.empty()) fail(ErrorKind::Unsupported, "the polytope has no distinguished facet");
  if (index >= p.distinguished.size())
    fail(ErrorKind::Parse, "facet index " + std::to_string(index) + " out of range (" +
                               std::to_string(p.distinguished.size()) + " distinguished facets)");
  return p.distinguished[index];
}

DiffPoly difference(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly out(a.vars(), a.independent(), a.dependent());
  if (!a.dependent() && b.dependent()) out = DiffPoly(a.vars(), b.independent(), b.dependent());
  for (const auto& t : a.terms()) out.add_term(t.coeff, t.exps, t.order);
  for (const auto& t : b.terms()) out.add_term(Coeff(-t.coeff.scalar, t.coeff.params), t.exps, t.order);
  return out;
}

json series_terms(const PuiseuxSeries& s) {
  json a = json::array();
  for (const auto& [e, c] : s.terms()) a.push_back({{"exponent", to_string(e)}, {"coefficient", to_string(c)}});
  return a;
}

json opt_rational(const std::optional<Rational>& q) { return q ? json(to_string(*q)) : json(nullptr); }

json facet_json(const PolytopeResult& p, const DistinguishedFacet& d, std::size_t index) {
  json j{{"index", index},
         {"facet", d.facet},
         {"offPoint", vec(p.hull.points[d.off_point])},
         {"normal", vec(d.normal)},
         {"offset", num(d.offset)},
         {"rawGap", num(d.raw_gap)},
         {"gap", opt_rational(d.gap)}};
  json r = json::array();
  for (const auto& q : d.exponents) r.push_back(to_string(q));
  j["exponents"] = r;
  j["dominant"] = d.dominant;
  if (!d.reason.empty()) j["reason"] = d.reason;
  return j;
}

std::string facet_line(const PolytopeResult& p, const DistinguishedFacet& d, std::size_t index) {
  std::ostringstream os;
  os << index << ": facet " << d.facet << ", off point " << point_str(p.hull.points[d.off_point]) << ", normal "
     << point_str(d.normal) << ", raw gap " << d.raw_gap.get_str();
  if (d.gap) os << ", c = " << to_string(*d.gap);
  if (!d.exponents.empty()) os << ", r = " << rat_list(d.exponents);
  if (d.dominant)
    os << ", dominant";
  else
    os << ", not dominant: " << d.reason;
  return os.str();
}

// The form used for the reduction when the anchor power is not 1.
std::optional<Group> normalized(const Group& g) {
  if (g.kind != Group::Kind::VariableScaling) return std::nullopt;
  Group h = g;
  Rational e = g.exponent(g.anchor);
  if (e == 1 || e == 0 || !is_integer(e)) return std::nullopt;
  if (e < 0) {
    for (auto& [name, q] : h.exponents) q = -q;
    e = -e;
  }
  if (e != 1) h = root_extract_group(h, e.get_num().get_si());
  return h;
}

}  // namespace

// ---- nondim

std::vector<Group> merge_groups(const std::vector<Group>& automatic, const std::vector<Group>& explicit_groups) {
  std::vector<Group> given;
  for (const auto& g : explicit_groups) {
    auto same = std::find_if(given.begin(), given.end(), [&](const Group& h) {
      return h.name == g.name || (g.kind == Group::Kind::VariableScaling && h.kind == g.kind && h.anchor == g.anchor);
    });
    if (same != given.end())
      *same = g;
    else
      given.push_back(g);
  }
  const bool replace_consts = std::any_of(given.begin(), given.end(),
                                          [](const Group& g) { return g.kind == Group::Kind::ConstantOnly; });
  std::vector<Group> out;
  for (const auto& a : automatic) {
    if (a.kind == Group::Kind::ConstantOnly) {
      if (!replace_consts) out.push_back(a);
      continue;
    }
    auto it = std::find_if(given.begin(), given.end(), [&](const Group& g) {
      return g.kind == Group::Kind::VariableScaling && g.anchor == a.anchor;
    });
    out.push_back(it != given.end() ? *it : a);
  }
  for (const auto& g : given) {
    if (g.kind == Group::Kind::ConstantOnly) {
      out.push_back(g);
      continue;
    }
    auto it = std::find_if(out.begin(), out.end(), [&](const Group& h) {
      return h.kind == Group::Kind::VariableScaling && h.anchor == g.anchor;
    });
    if (it == out.end()) out.push_back(g);
  }
  // variable groups first (variable order of the automatic list), then constants
  std::stable_partition(out.begin(), out.end(),
                        [](const Group& g) { return g.kind == Group::Kind::VariableScaling; });
  return out;
}

NondimResult run_nondim(const SourceSystem& src, const std::vector<Group>& extra_groups) {
  NondimResult r;
  r.system = src.system;
  r.notices = assign_uniform_variables(r.system);
  r.beta = inference_beta(r.system);
  r.inferred = infer_constant_dimensions(r.system, r.system.var_dims, r.beta);
  r.full_dims = r.system.var_dims;
  r.full_dims.insert(r.system.const_dims.begin(), r.system.const_dims.end());
  r.full_dims.insert(r.inferred.begin(), r.inferred.end());
  r.beta = check_homogeneity(r.system, r.full_dims);
  r.ideal = variable_constant_ideal(r.system, r.full_dims);
  r.selection = select_groups(r.ideal, r.system);

  std::vector<Group> given = src.groups;
  given.insert(given.end(), extra_groups.begin(), extra_groups.end());
  r.groups = merge_groups(r.selection.groups, given);
  const std::size_t n = r.system.base_dims.size();
  for (const auto& g : r.groups) {
    DimVector d = group_dimension(g, r.full_dims, n);
    if (std::any_of(d.begin(), d.end(), [](const Integer& z) { return z != 0; }))
      fail(ErrorKind::Domain, "group " + to_string(g) + " is not dimensionless: it has dimension " +
                                  dim_to_string(d, r.system.base_dims));
  }
  r.reduced = nondimensionalize(r.system, r.groups);
  return r;
}

json nondim_json(const NondimResult& r) {
  const auto& base = r.system.base_dims;
  json j = header("nondim");
  j["baseDimensions"] = base;
  j["beta"] = vec(r.beta);
  json vd = json::object();
  for (const auto& v : r.system.vars) vd[v] = vec(r.full_dims.at(v));
  j["varDims"] = vd;
  json cd = json::object();
  for (const auto& k : r.system.consts)
    cd[k] = {{"dims", vec(r.full_dims.at(k))},
             {"text", dim_to_string(r.full_dims.at(k), base)},
             {"inferred", r.inferred.count(k) > 0}};
  j["constDims"] = cd;
  json gens = json::array();
  for (const auto& b : r.ideal.generators) gens.push_back(to_string(b, r.ideal.names));
  j["idealGenerators"] = gens;
  j["referenceConstants"] = r.selection.reference_consts;
  json groups = json::array();
  for (const auto& g : r.groups) {
    json ex = json::object();
    for (const auto& [s, e] : g.exponents) ex[s] = to_string(e);
    groups.push_back({{"name", g.name}, {"kind", kind_name(g.kind)}, {"anchor", g.anchor},
                      {"expression", to_string(g)}, {"exponents", ex}});
    if (auto n = normalized(g)) groups.back()["normalized"] = to_string(*n);
  }
  j["groups"] = groups;
  j["failures"] = r.selection.failures;
  j["notices"] = r.notices;
  j["reducedEquation"] = to_string(r.reduced) + " = 0";
  return j;
}

std::string nondim_text(const NondimResult& r) {
  const auto& base = r.system.base_dims;
  std::ostringstream os;
  os << "base dimensions:";
  for (const auto& d : base) os << ' ' << d;
  os << "\ncommon term dimension: " << dim_to_string(r.beta, base) << '\n';
  os << "variables:\n";
  for (const auto& v : r.system.vars) os << "  [" << v << "] = " << dim_to_string(r.full_dims.at(v), base) << '\n';
  os << "constants:\n";
  for (const auto& k : r.system.consts)
    os << "  [" << k << "] = " << dim_to_string(r.full_dims.at(k), base) << (r.inferred.count(k) ? "  (inferred)" : "")
       << '\n';
  for (const auto& n : r.notices) os << "note: " << n << '\n';
  os << "variable-constant ideal:\n";
  if (r.ideal.generators.empty()) os << "  (zero ideal)\n";
  for (const auto& b : r.ideal.generators) os << "  " << to_string(b, r.ideal.names) << '\n';
  os << "reference constants:";
  for (const auto& k : r.selection.reference_consts) os << ' ' << k;
  os << "\ngroups:\n";
  for (const auto& g : r.groups) {
    os << "  " << to_string(g) << '\n';
    if (auto n = normalized(g)) os << "    as " << to_string(*n) << '\n';
  }
  for (const auto& f : r.selection.failures) os << "warning: " << f << '\n';
  os << "reduced equation:\n  " << to_string(r.reduced) << " = 0\n";
  return os.str();
}

json inhomogeneous_json(const InhomogeneousError& e, const std::vector<std::string>& base_dims) {
  json j = header("nondim");
  j["error"] = "inhomogeneous";
  j["message"] = e.what();
  json terms = json::array();
  for (const auto& t : e.terms())
    terms.push_back({{"term", t.term}, {"dims", vec(t.dim)}, {"text", dim_to_string(t.dim, base_dims)}});
  j["terms"] = terms;
  return j;
}

std::string inhomogeneous_text(const InhomogeneousError& e, const std::vector<std::string>& base_dims) {
  std::ostringstream os;
  const std::string what = e.what();
  os << "inhomogeneous system: " << what << '\n';
  if (!e.terms().empty() && what.find('\n') == std::string::npos) {
    os << "term dimensions:\n";
    for (const auto& t : e.terms()) os << "  [" << t.term << "] = " << dim_to_string(t.dim, base_dims) << '\n';
  }
  return os.str();
}

// ---- toric / kernel

MatrixFile parse_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::optional<std::pair<std::size_t, std::size_t>> shape;
  std::vector<IntVector> rows;
  std::vector<std::string> names;
  std::string pending;
  auto bad = [&](const std::string& what) {
    fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string comment;
    if (auto h = line.find('#'); h != std::string::npos) {
      comment = line.substr(h + 1);
      line = line.substr(0, h);
    }
    std::istringstream ws(comment);
    std::string name;
    ws >> name;
    std::istringstream ls(line);
    std::vector<std::string> words;
    for (std::string w; ls >> w;) words.push_back(w);
    if (words.empty()) {
      if (shape && !name.empty()) pending = name;
      continue;
    }
    IntVector nums;
    for (const auto& w : words) {
      Integer z;
      if (z.set_str(w, 10) != 0) bad("'" + w + "' is not an integer");
      nums.push_back(z);
    }
    if (!shape) {
      if (nums.size() != 2 || nums[0] < 0 || nums[1] < 0) bad("expected the shape line 'd k'");
      shape = {nums[0].get_ui(), nums[1].get_ui()};
      continue;
    }
    if (nums.size() != shape->second)
      bad("expected " + std::to_string(shape->second) + " entries, found " + std::to_string(nums.size()));
    if (rows.size() == shape->first) bad("more rows than declared");
    rows.push_back(nums);
    names.push_back(!name.empty() ? name : !pending.empty() ? pending : "x" + std::to_string(rows.size()));
    pending.clear();
  }
  if (!shape) fail(ErrorKind::Parse, "empty matrix file");
  if (rows.size() != shape->first)
    fail(ErrorKind::Parse, "expected " + std::to_string(shape->first) + " rows, found " + std::to_string(rows.size()));
  MatrixFile m;
  m.matrix = IntMatrix(shape->first, shape->second);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < shape->second; ++j) m.matrix(i, j) = rows[i][j];
  m.names = names;
  return m;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

json toric_json(const MatrixFile& m, const std::vector<Binomial>& gens) {
  json j = header("toric");
  j["names"] = m.names;
  json a = json::array();
  for (const auto& b : gens)
    a.push_back({{"vplus", vec(b.vplus)}, {"vminus", vec(b.vminus)}, {"text", to_string(b, m.names)}});
  j["binomials"] = a;
  return j;
}

std::string toric_text(const MatrixFile& m, const std::vector<Binomial>& gens) {
  std::ostringstream os;
  for (const auto& b : gens) os << to_string(b, m.names) << '\n';
  return os.str();
}

json kernel_json(const MatrixFile& m, const IntMatrix& kernel) {
  json j = header("kernel");
  j["names"] = m.names;
  j["rank"] = rank(m.matrix);
  json cols = json::array();
  for (std::size_t c = 0; c < kernel.cols(); ++c) cols.push_back(vec(kernel.column(c)));
  j["columns"] = cols;
  return j;
}

std::string kernel_text(const MatrixFile& m, const IntMatrix& kernel) {
  std::ostringstream os;
  os << "rank " << rank(m.matrix) << ", kernel dimension " << kernel.cols() << '\n';
  for (std::size_t c = 0; c < kernel.cols(); ++c) {
    os << "  " << point_str(kernel.column(c)) << "  ";
    std::string mono;
    for (std::size_t i = 0; i < kernel.rows(); ++i) {
      const Integer& e = kernel(i, c);
      if (e == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += m.names[i];
      if (e != 1) mono += "^" + e.get_str();
    }
    os << (mono.empty() ? "1" : mono) << '\n';
  }
  return os.str();
}

// ---- polytope

PolytopeResult run_polytope(const DimensionedSystem& sys, bool diff) {
  PolytopeResult r;
  const DimensionedSystem ordered = expansion_order(sys);
  r.vars = ordered.vars;
  r.kruskal = diff || ordered.equation.has_derivatives();
  if (r.kruskal) {
    r.hull = convex_hull(kruskal_points(ordered.equation));
  } else {
    r.hull = newton_polytope(ordered.equation.to_poly());
  }
  if (r.hull.affine_dim == r.hull.ambient_dim) r.distinguished = distinguished_facets(r.hull);
  return r;
}

json polytope_json(const PolytopeResult& r) {
  json j = header("polytope");
  j["vars"] = r.vars;
  j["kind"] = r.kruskal ? "kruskal-newton" : "newton";
  json pts = json::array();
  for (const auto& p : r.hull.points) pts.push_back(vec(p));
  j["points"] = pts;
  j["vertices"] = r.hull.vertices;
  j["affineDim"] = r.hull.affine_dim;
  json facets = json::array();
  for (const auto& f : r.hull.facets)
    facets.push_back({{"normal", vec(f.normal)}, {"offset", num(f.offset)}, {"points", f.points}});
  j["facets"] = facets;
  json d = json::array();
  for (std::size_t i = 0; i < r.distinguished.size(); ++i) d.push_back(facet_json(r, r.distinguished[i], i));
  j["distinguished"] = d;
  return j;
}

std::string polytope_text(const PolytopeResult& r) {
  std::ostringstream os;
  os << (r.kruskal ? "Kruskal-Newton" : "Newton") << " points over (";
  for (std::size_t i = 0; i < r.vars.size(); ++i) os << (i ? ", " : "") << r.vars[i];
  os << "):\n";
  for (std::size_t i = 0; i < r.hull.points.size(); ++i) os << "  " << i << ": " << point_str(r.hull.points[i]) << '\n';
  os << "vertices:";
  for (auto v : r.hull.vertices) os << ' ' << v;
  os << "\n";
  if (r.hull.affine_dim < r.hull.ambient_dim) {
    os << "not full-dimensional (affine dimension " << r.hull.affine_dim << "); no facets\n";
    return os.str();
  }
  os << "facets:\n";
  for (std::size_t i = 0; i < r.hull.facets.size(); ++i) {
    const auto& f = r.hull.facets[i];
    os << "  " << i << ": normal " << point_str(f.normal) << ", offset " << f.offset.get_str() << ", points {";
    for (std::size_t k = 0; k < f.points.size(); ++k) os << (k ? ", " : "") << f.points[k];
    os << "}\n";
  }
  os << "distinguished facets:\n";
  if (r.distinguished.empty()) os << "  none\n";
  for (std::size_t i = 0; i < r.distinguished.size(); ++i) os << "  " << facet_line(r, r.distinguished[i], i) << '\n';
  return os.str();
}

// ---- expand

ExpandResult run_expand(const DimensionedSystem& sys, const ExpandOptions& opt) {
  if (sys.equation.has_derivatives())
    fail(ErrorKind::Unsupported, "the equation has derivative terms; use expand-diff");
  if (opt.order < 0) fail(ErrorKind::Parse, "--order must be non-negative");
  const DimensionedSystem ordered = expansion_order(sys);
  Poly f = ordered.equation.to_poly().evaluate_params(opt.params);
  if (f.has_params()) numeric_value(f, "the equation");

  ExpandResult r;
  r.vars = f.vars();
  PolytopeResult p;
  p.vars = f.vars();
  p.hull = newton_polytope(f);
  if (p.hull.affine_dim == p.hull.ambient_dim) p.distinguished = distinguished_facets(p.hull);
  r.facet = pick_facet(p, opt.facet);
  if (!r.facet.dominant) fail(ErrorKind::Unsupported, "facet " + std::to_string(opt.facet) + " is not dominant: " + r.facet.reason);
  if (f.vars().size() > 2 && opt.ancillary.size() != f.vars().size() - 2)
    fail(ErrorKind::Parse, "expected " + std::to_string(f.vars().size() - 2) +
                               " ancillary value(s) for the middle variables (use --ancillary)");
  r.data = facet_data(f, r.facet, opt.ancillary);
  r.roots = facet_roots(r.data.F);
  if (opt.root) {
    r.root = *opt.root;
  } else {
    auto simple = std::find_if(r.roots.roots.begin(), r.roots.roots.end(), [](const auto& rm) { return rm.second == 1; });
    if (simple == r.roots.roots.end())
      fail(ErrorKind::Unsupported, "the facet polynomial " + to_string(r.data.F) +
                                       " has no simple nonzero rational root");
    r.root = simple->first;
  }
  r.series = np_expand(f, r.facet, r.root, opt.order, opt.ancillary);
  const Rational omega = r.series.omega() ? *r.series.omega() : r.data.lead_exponent + (opt.order + 1) * r.data.gap;
  r.residual = residual_order(f, r.series, omega + r.data.gap, r.data.ancillary);
  r.expected = r.data.facet_level + opt.order * r.data.gap;
  r.residual_ok = !r.residual.order || *r.residual.order > r.expected;
  return r;
}

json expand_json(const ExpandResult& r) {
  json j = header("expand");
  j["vars"] = r.vars;
  j["facet"] = {{"normal", vec(r.facet.normal)}, {"offset", num(r.facet.offset)}};
  j["facetPolynomial"] = to_string(r.data.F);
  json roots = json::array();
  for (const auto& [q, m] : r.roots.roots) roots.push_back({{"root", to_string(q)}, {"multiplicity", m}});
  j["facetRoots"] = roots;
  j["root"] = to_string(r.root);
  j["leadExponent"] = to_string(r.data.lead_exponent);
  j["gap"] = to_string(r.data.gap);
  j["terms"] = series_terms(r.series);
  j["omega"] = opt_rational(r.series.omega());
  j["series"] = to_string(r.series);
  j["residualOrderCheck"] = {{"order", opt_rational(r.residual.order)},
                             {"searchedBelow", to_string(r.residual.bound)},
                             {"mustExceed", to_string(r.expected)},
                             {"pass", r.residual_ok}};
  return j;
}

std::string expand_text(const ExpandResult& r) {
  const std::string& x1 = r.vars.front();
  std::ostringstream os;
  os << "facet normal " << point_str(r.facet.normal) << ", offset " << r.facet.offset.get_str() << '\n';
  os << "facet polynomial: " << to_string(r.data.F) << '\n';
  os << "rational roots:";
  for (const auto& [q, m] : r.roots.roots) os << ' ' << to_string(q) << (m > 1 ? " (x" + std::to_string(m) + ")" : "");
  os << "\nroot: " << to_string(r.root) << '\n';
  os << "lead exponent: " << to_string(r.data.lead_exponent) << ", gap: " << to_string(r.data.gap) << '\n';
  os << r.vars.back() << " = " << to_string(r.series) << '\n';
  os << "residual: " << to_string(r.residual, x1) << " (must exceed " << x1 << "^" << to_string(r.expected) << ": "
     << (r.residual_ok ? "ok" : "FAILED") << ")\n";
  return os.str();
}

// ---- facet-ode / expand-diff

FacetOdeResult run_facet_ode(const DimensionedSystem& sys, std::size_t facet) {
  FacetOdeResult r;
  const DimensionedSystem ordered = expansion_order(sys);
  r.polytope = run_polytope(ordered, true);
  r.facet = pick_facet(r.polytope, facet);
  r.facet_index = facet;
  r.ode = facet_ode(ordered.equation, r.facet);
  try {
    r.powerlaw = powerlaw_facet_solution(r.ode.scaled.Ftilde);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Invariant) throw;
    r.powerlaw.status = PowerLawSolution::Status::Refused;
    r.powerlaw.reason = e.what();
  }
  return r;
}

namespace {

json powerlaw_json(const PowerLawSolution& p) {
  using S = PowerLawSolution::Status;
  json j;
  switch (p.status) {
    case S::Unique:
      j = {{"status", "unique"}, {"rho", to_string(p.rho)}, {"sigmaNumerator", to_string(p.sigma_num)},
           {"sigmaDenominator", to_string(p.sigma_den)}};
      break;
    case S::Roots: {
      json roots = json::array();
      for (const auto& q : p.sigma_roots) roots.push_back(to_string(q));
      j = {{"status", "roots"}, {"rho", to_string(p.rho)}, {"sigmaRoots", roots}};
      break;
    }
    case S::Family: {
      json roots = json::array();
      for (const auto& q : p.rho_roots) roots.push_back(to_string(q));
      j = {{"status", "family"}, {"rhoRoots", roots}};
      break;
    }
    case S::Refused:
      j = {{"status", "refused"}, {"reason", p.reason}};
      break;
  }
  return j;
}

std::string powerlaw_text(const PowerLawSolution& p) {
  using S = PowerLawSolution::Status;
  std::ostringstream os;
  switch (p.status) {
    case S::Unique:
      os << "power-law solution: sigma = (" << to_string(p.sigma_num) << ") / (" << to_string(p.sigma_den)
         << "), rho = " << to_string(p.rho);
      break;
    case S::Roots:
      os << "power-law solution: rho = " << to_string(p.rho) << ", sigma in {";
      for (std::size_t i = 0; i < p.sigma_roots.size(); ++i) os << (i ? ", " : "") << to_string(p.sigma_roots[i]);
      os << "}";
      break;
    case S::Family:
      os << "power-law solution: any sigma, rho in {";
      for (std::size_t i = 0; i < p.rho_roots.size(); ++i) os << (i ? ", " : "") << to_string(p.rho_roots[i]);
      os << "}";
      break;
    case S::Refused:
      os << "no power-law facet solution: " << p.reason;
      break;
  }
  return os.str();
}

}  // namespace

json facet_ode_json(const FacetOdeResult& r) {
  json j = header("facet-ode");
  j["vars"] = r.polytope.vars;
  j["facet"] = facet_json(r.polytope, r.facet, r.facet_index);
  j["Ftilde"] = to_string(r.ode.split.Ftilde);
  j["Gtilde"] = to_string(r.ode.split.Gtilde);
  j["c"] = opt_rational(r.ode.split.gap);
  json subs = json::array();
  for (const auto& [v, e] : r.ode.substitutions) subs.push_back({{"var", v}, {"value", e}});
  j["substitutions"] = subs;
  j["scaledFtilde"] = to_string(r.ode.scaled.Ftilde);
  j["scaledGtilde"] = to_string(r.ode.scaled.Gtilde);
  j["powerLaw"] = powerlaw_json(r.powerlaw);
  return j;
}

std::string facet_ode_text(const FacetOdeResult& r) {
  std::ostringstream os;
  os << "facet: normal " << point_str(r.facet.normal) << ", off point "
     << point_str(r.polytope.hull.points[r.facet.off_point]) << '\n';
  os << "F~ = " << to_string(r.ode.split.Ftilde) << '\n';
  os << "G~ = " << to_string(r.ode.split.Gtilde) << '\n';
  os << "c = " << (r.ode.split.gap ? to_string(*r.ode.split.gap) : std::string("none (normal has zero first component)"))
     << '\n';
  if (!r.ode.substitutions.empty()) {
    os << "substitutions:";
    for (const auto& [v, e] : r.ode.substitutions) os << ' ' << v << " = " << e << ';';
    os << '\n';
    os << "scaled F~ = " << to_string(r.ode.scaled.Ftilde) << '\n';
    os << "scaled G~ = " << to_string(r.ode.scaled.Gtilde) << '\n';
  }
  os << powerlaw_text(r.powerlaw) << '\n';
  return os.str();
}

ExpandDiffResult run_expand_diff(const DimensionedSystem& sys, const ExpandDiffOptions& opt) {
  using S = PowerLawSolution::Status;
  if (opt.order < 0) fail(ErrorKind::Parse, "--order must be non-negative");
  ExpandDiffResult r;
  r.facet_ode = run_facet_ode(sys, opt.facet);
  const auto& fo = r.facet_ode;
  if (!fo.facet.dominant) fail(ErrorKind::Unsupported, "facet " + std::to_string(opt.facet) + " is not dominant: " + fo.facet.reason);
  const PowerLawSolution& pl = fo.powerlaw;
  require_params(difference(fo.ode.scaled.Ftilde, fo.ode.scaled.Gtilde).evaluate_params(opt.params));
  switch (pl.status) {
    case S::Refused:
      fail(ErrorKind::Unsupported, "non-power-law facet: " + pl.reason);
    case S::Unique: {
      const Rational den = numeric_value(pl.sigma_den.evaluate_params(opt.params), "sigma");
      const Rational numer = numeric_value(pl.sigma_num.evaluate_params(opt.params), "sigma");
      if (den == 0) fail(ErrorKind::Domain, "sigma has a zero denominator for these parameter values");
      r.sigma = numer / den;
      if (opt.sigma && *opt.sigma != r.sigma) fail(ErrorKind::Domain, "--sigma does not solve the facet equation");
      r.rho = pl.rho;
      break;
    }
    case S::Roots:
      r.rho = pl.rho;
      if (opt.sigma) {
        if (std::find(pl.sigma_roots.begin(), pl.sigma_roots.end(), *opt.sigma) == pl.sigma_roots.end())
          fail(ErrorKind::Domain, "--sigma is not a root of the facet equation");
        r.sigma = *opt.sigma;
      } else {
        if (pl.sigma_roots.empty()) fail(ErrorKind::Unsupported, "no rational power-law coefficient");
        r.sigma = *std::min_element(pl.sigma_roots.begin(), pl.sigma_roots.end());
      }
      break;
    case S::Family:
      if (!opt.sigma) fail(ErrorKind::Parse, "the facet admits every sigma; choose one with --sigma");
      r.sigma = *opt.sigma;
      r.rho = *std::min_element(pl.rho_roots.begin(), pl.rho_roots.end());
      break;
  }
  if (r.sigma == 0) fail(ErrorKind::Unsupported, "the power-law coefficient vanishes for these parameter values");
  r.equation = difference(fo.ode.scaled.Ftilde, fo.ode.scaled.Gtilde).evaluate_params(opt.params);
  require_params(r.equation);
  r.series = np_expand_diff(r.equation, r.sigma, r.rho, opt.order);
  for (const auto& [e, c] : r.series.terms())
    if (e != r.rho) r.corrections.emplace_back(e - r.rho, c / r.sigma);
  const Rational gap = fo.ode.split.gap ? *fo.ode.split.gap : Rational(1);
  const Rational top = r.series.omega() ? *r.series.omega() : r.series.terms().rbegin()->first;
  r.bound = top + 2 * gap;
  for (int k = 0; k <= opt.order; ++k) {
    PuiseuxSeries s = k == opt.order ? r.series : np_expand_diff(r.equation, r.sigma, r.rho, k);
    r.residual_orders.push_back(residual_order_diff(r.equation, s, r.bound));
  }
  return r;
}

json expand_diff_json(const ExpandDiffResult& r) {
  json j = header("expand-diff");
  j["equation"] = to_string(r.equation) + " = 0";
  j["sigma"] = to_string(r.sigma);
  j["rho"] = to_string(r.rho);
  j["terms"] = series_terms(r.series);
  j["omega"] = opt_rational(r.series.omega());
  j["series"] = to_string(r.series);
  json z = json::array();
  for (const auto& [e, c] : r.corrections) z.push_back({{"exponent", to_string(e)}, {"z", to_string(c)}});
  j["corrections"] = z;
  json res = json::array();
  for (const auto& o : r.residual_orders) res.push_back(opt_rational(o));
  j["residualOrders"] = res;
  j["searchedBelow"] = to_string(r.bound);
  return j;
}

std::string expand_diff_text(const ExpandDiffResult& r) {
  const std::string& u = r.series.var();
  std::ostringstream os;
  os << "equation: " << to_string(r.equation) << " = 0\n";
  os << "start: " << to_string(PuiseuxSeries::monomial(u, r.sigma, r.rho)) << '\n';
  os << "series: " << to_string(r.series) << '\n';
  for (std::size_t k = 0; k < r.corrections.size(); ++k)
    os << "z" << k + 1 << " = " << to_string(r.corrections[k].second) << " at " << u << "^("
       << to_string(r.corrections[k].first) << ") relative\n";
  os << "residual orders:";
  for (std::size_t k = 0; k < r.residual_orders.size(); ++k) {
    const auto& o = r.residual_orders[k];
    os << " N=" << k << ": " << (o ? to_string(*o) : ">= " + to_string(r.bound)) << (k + 1 < r.residual_orders.size() ? ";" : "");
  }
  os << '\n';
  return os.str();
}

// ---- emit-z

EmitResult run_emit_z(const DimensionedSystem& sys, const PerturbationTrial& trial) {
  EmitResult r;
  r.equation = emit_perturbation_equation(sys.equation, trial);
  std::set<std::string> seen;
  for (const auto& k : sys.consts) {
    r.consts.push_back(k);
    seen.insert(k);
  }
  for (const auto& t : r.equation.terms())
    for (const auto& [n, e] : t.coeff.params.factors())
      if (seen.insert(n).second) r.consts.push_back(n);
  // drop constants that no longer occur
  std::set<std::string> used;
  for (const auto& t : r.equation.terms())
    for (const auto& [n, e] : t.coeff.params.factors()) used.insert(n);
  std::erase_if(r.consts, [&](const std::string& k) { return !used.count(k); });
  return r;
}

json emit_json(const EmitResult& r) {
  json j = header("emit-z");
  j["vars"] = r.equation.vars();
  j["consts"] = r.consts;
  j["equation"] = to_string(r.equation);
  j["dsl"] = emit_text(r);
  return j;
}

std::string emit_text(const EmitResult& r) {
  std::ostringstream os;
  for (const auto& v : r.equation.vars()) os << "var " << v << '\n';
  if (!r.consts.empty()) {
    os << "const ";
    for (std::size_t i = 0; i < r.consts.size(); ++i) os << (i ? ", " : "") << r.consts[i];
    os << '\n';
  }
  os << "eq: " << to_string(r.equation) << " = 0\n";
  return os.str();
}

}  // namespace toricnp
