#include "toricnp/cli.hpp"

#include <CLI11.hpp>

#include <functional>
#include <ostream>

#include "toricnp/error.hpp"
#include "toricnp/report.hpp"

namespace toricnp {

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return 2;
    case ErrorKind::Inhomogeneous: return 3;
    case ErrorKind::Domain:
    case ErrorKind::Unsupported: return 4;
    case ErrorKind::Invariant: return 5;
  }
  return 5;
}

const char* kind_label(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Inhomogeneous: return "inhomogeneous";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Invariant: return "invariant";
  }
  return "invariant";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

Rational flag_rational(const std::string& text, const std::string& flag) {
  try {
    return parse_rational(trim(text));
  } catch (const Error&) {
    fail(ErrorKind::Parse, flag + ": not a rational number: '" + text + "'");
  }
}

std::map<std::string, Rational> parse_params(const std::string& text) {
  std::map<std::string, Rational> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || trim(item.substr(0, eq)).empty())
      fail(ErrorKind::Parse, "--params: expected name=value, found '" + item + "'");
    out[trim(item.substr(0, eq))] = flag_rational(item.substr(eq + 1), "--params");
  }
  return out;
}

std::vector<Rational> parse_list(const std::string& text, const std::string& flag) {
  std::vector<Rational> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) out.push_back(flag_rational(item, flag));
  return out;
}

struct Common {
  bool json_out = false;
};

void add_json(CLI::App* sub, Common& c) { sub->add_flag("--json", c.json_out, "print the JSON report"); }

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"toricnp: toric dimensional analysis and Newton-Puiseux expansion", "toricnp"};
  app.require_subcommand(1);
  Common common;
  std::string file, matrix_file, root = "auto", params, ancillary, sigma, y0 = "y0", z = "z", power_law, known;
  std::vector<std::string> group_texts;
  std::size_t facet = 0;
  int order = -1;
  bool diff = false, by_elimination = false;

  auto* nondim = app.add_subcommand("nondim", "non-dimensionalise an equation");
  nondim->add_option("file", file, "equation file")->required();
  nondim->add_option("--group", group_texts, "explicit group 'NAME = product' (repeatable)");
  add_json(nondim, common);

  auto* toric = app.add_subcommand("toric", "toric ideal of an exponent matrix");
  toric->add_option("--matrix,file", matrix_file, "matrix file")->required();
  toric->add_flag("--elimination", by_elimination, "compute by eliminating dimension indeterminates");
  add_json(toric, common);

  auto* kernel = app.add_subcommand("kernel", "integer kernel basis of the transposed exponent matrix");
  kernel->add_option("--matrix,file", matrix_file, "matrix file")->required();
  add_json(kernel, common);

  auto* polytope = app.add_subcommand("polytope", "Newton or Kruskal-Newton polytope and distinguished facets");
  polytope->add_option("file", file, "equation file")->required();
  polytope->add_flag("--diff", diff, "use Kruskal-Newton points");
  add_json(polytope, common);

  auto* expand = app.add_subcommand("expand", "Newton-Puiseux expansion of an algebraic equation");
  expand->add_option("file", file, "equation file")->required();
  expand->add_option("--facet", facet, "distinguished facet index");
  expand->add_option("--root", root, "facet root, or auto for the smallest simple root");
  expand->add_option("--order", order, "number of corrections (default 4)");
  expand->add_option("--ancillary", ancillary, "values s_2,...,s_{d-1} of the ancillary variables");
  expand->add_option("--params", params, "parameter values name=value,...");
  add_json(expand, common);

  auto* facet_ode_cmd = app.add_subcommand("facet-ode", "facet split of a differential equation");
  facet_ode_cmd->add_option("file", file, "equation file")->required();
  facet_ode_cmd->add_option("--facet", facet, "distinguished facet index");
  add_json(facet_ode_cmd, common);

  auto* expand_diff = app.add_subcommand("expand-diff", "restricted iteration on a power-law facet");
  expand_diff->add_option("file", file, "equation file")->required();
  expand_diff->add_option("--facet", facet, "distinguished facet index");
  expand_diff->add_option("--params", params, "parameter values name=value,...");
  expand_diff->add_option("--order", order, "number of corrections (default 3)");
  expand_diff->add_option("--sigma", sigma, "power-law coefficient when it is not unique");
  add_json(expand_diff, common);

  auto* emit = app.add_subcommand("emit-z", "perturbation equation for y = y0 (1 + known + z)");
  emit->add_option("file", file, "equation file")->required();
  emit->add_option("--y0", y0, "name of the leading solution");
  emit->add_option("--z", z, "name of the perturbation");
  emit->add_option("--power-law", power_law, "y0 = coeff * x^exp given as 'coeff,exp'");
  emit->add_option("--known", known, "known correction, a polynomial in the independent variable");
  add_json(emit, common);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  DimensionedSystem sys;
  auto emit_report = [&](const json& j, const std::string& text) {
    if (common.json_out)
      out << j.dump(2) << '\n';
    else
      out << text;
  };

  try {
    if (command == "nondim") {
      SourceSystem src = parse_system_file(file);
      sys = src.system;
      std::vector<Group> extra;
      for (const auto& t : group_texts) {
        try {
          extra.push_back(parse_group(t, src.system));
        } catch (const Error& e) {
          fail(ErrorKind::Parse, "--group '" + t + "': " + e.what());
        }
      }
      NondimResult r = run_nondim(src, extra);
      emit_report(nondim_json(r), nondim_text(r));
    } else if (command == "toric") {
      MatrixFile m = read_matrix_file(matrix_file);
      auto gens = by_elimination ? toric_ideal_by_elimination(m.matrix, m.names) : toric_ideal(m.matrix, m.names);
      emit_report(toric_json(m, gens), toric_text(m, gens));
    } else if (command == "kernel") {
      MatrixFile m = read_matrix_file(matrix_file);
      IntMatrix k = integer_kernel(m.matrix);
      emit_report(kernel_json(m, k), kernel_text(m, k));
    } else if (command == "polytope") {
      sys = parse_system_file(file).system;
      PolytopeResult r = run_polytope(sys, diff);
      emit_report(polytope_json(r), polytope_text(r));
    } else if (command == "expand") {
      sys = parse_system_file(file).system;
      ExpandOptions opt;
      opt.facet = facet;
      if (trim(root) != "auto") opt.root = flag_rational(root, "--root");
      if (order >= 0) opt.order = order;
      opt.ancillary = parse_list(ancillary, "--ancillary");
      opt.params = parse_params(params);
      ExpandResult r = run_expand(sys, opt);
      emit_report(expand_json(r), expand_text(r));
    } else if (command == "facet-ode") {
      sys = parse_system_file(file).system;
      FacetOdeResult r = run_facet_ode(sys, facet);
      emit_report(facet_ode_json(r), facet_ode_text(r));
    } else if (command == "expand-diff") {
      sys = parse_system_file(file).system;
      ExpandDiffOptions opt;
      opt.facet = facet;
      if (order >= 0) opt.order = order;
      opt.params = parse_params(params);
      if (!sigma.empty()) opt.sigma = flag_rational(sigma, "--sigma");
      ExpandDiffResult r = run_expand_diff(sys, opt);
      emit_report(expand_diff_json(r), expand_diff_text(r));
    } else if (command == "emit-z") {
      sys = parse_system_file(file).system;
      if (!sys.equation.dependent()) fail(ErrorKind::Unsupported, "emit-z needs a differential equation");
      PerturbationTrial trial;
      trial.y0 = y0;
      trial.z = z;
      const std::string x = *sys.equation.independent();
      if (!power_law.empty()) {
        auto parts = split(power_law, ',');
        if (parts.size() != 2) fail(ErrorKind::Parse, "--power-law: expected 'coeff,exp'");
        Poly c = parse_polynomial(parts[0], {});
        if (c.size() != 1) fail(ErrorKind::Parse, "--power-law: the coefficient must be a single term");
        const auto& [mono, q] = *c.terms().begin();
        trial.power_law = std::make_pair(Coeff(q, mono.params), flag_rational(parts[1], "--power-law"));
      }
      if (!known.empty()) trial.known = parse_polynomial(known, {x});
      EmitResult r = run_emit_z(sys, trial);
      emit_report(emit_json(r), emit_text(r));
    }
  } catch (const InhomogeneousError& e) {
    if (common.json_out)
      out << inhomogeneous_json(e, sys.base_dims).dump(2) << '\n';
    else
      out << inhomogeneous_text(e, sys.base_dims);
    return 3;
  } catch (const Error& e) {
    if (common.json_out) {
      json j{{"schema", 1}, {"command", command}, {"error", kind_label(e.kind())}, {"message", e.what()}};
      out << j.dump(2) << '\n';
    }
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 5;
  }
  return 0;
}

}  // namespace toricnp
