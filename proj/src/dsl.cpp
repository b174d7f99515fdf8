#include "toricnp/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "toricnp/error.hpp"

namespace toricnp {

namespace {

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int col = 0;  // 1-based
};

[[noreturn]] void parse_fail(int line, int col, const std::string& what) {
  fail(ErrorKind::Parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

std::string describe(const Token& t) {
  if (t.kind == Token::Kind::End) return "end of line";
  return "'" + t.text + "'";
}

std::vector<Token> tokenize(const std::string& text, int line, int col0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char ch = text[i];
    const int col = col0 + static_cast<int>(i);
    if (std::isspace(ch)) {
      ++i;
    } else if (std::isalpha(ch) || ch == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Token::Kind::Ident, text.substr(i, j - i), col});
      i = j;
    } else if (std::isdigit(ch)) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::Kind::Number, text.substr(i, j - i), col});
      i = j;
    } else if (std::string_view("+-*/^(),=:").find(static_cast<char>(ch)) != std::string_view::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, static_cast<char>(ch)), col});
      ++i;
    } else {
      parse_fail(line, col, "unexpected character '" + std::string(1, static_cast<char>(ch)) + "'");
    }
  }
  out.push_back({Token::Kind::End, "", col0 + static_cast<int>(text.size())});
  return out;
}

class Cursor {
 public:
  Cursor(std::vector<Token> toks, int line) : toks_(std::move(toks)), line_(line) {}

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is(const char* punct) const { return peek().kind == Token::Kind::Punct && peek().text == punct; }
  bool accept(const char* punct) {
    if (!is(punct)) return false;
    ++pos_;
    return true;
  }
  int line() const { return line_; }

  [[noreturn]] void expected(const std::string& what) const {
    parse_fail(line_, peek().col, "expected " + what + ", found " + describe(peek()));
  }
  void expect(const char* punct) {
    if (!accept(punct)) expected("'" + std::string(punct) + "'");
  }
  Token ident() {
    if (peek().kind != Token::Kind::Ident) expected("a name");
    return next();
  }
  Token number() {
    if (peek().kind != Token::Kind::Number) expected("an integer");
    return next();
  }
  void expect_end() {
    if (!at_end()) expected("end of line");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

// integer, -integer, or (p/q) with an optional sign
Rational parse_exponent(Cursor& c) {
  if (c.accept("(")) {
    const bool neg = c.accept("-");
    Rational q(c.number().text);
    if (c.accept("/")) {
      const Token den = c.number();
      if (Integer(den.text) == 0) parse_fail(c.line(), den.col, "zero denominator");
      q = make_rational(Integer(q.get_num()), Integer(den.text));
    }
    c.expect(")");
    return neg ? Rational(-q) : q;
  }
  const bool neg = c.accept("-");
  if (c.peek().kind != Token::Kind::Number) c.expected("an integer exponent or '('");
  Rational q(c.next().text);
  return neg ? Rational(-q) : q;
}

struct Derivative {
  std::string dep;
  std::string indep;
  int order = 1;
  int col = 0;
};

struct RawTerm {
  Coeff coeff;
  std::map<std::string, Rational> powers;  // variables
  std::optional<Derivative> deriv;
};

struct Symbols {
  std::vector<std::string> vars;
  std::vector<std::string> consts;
  bool free_params = false;  // undeclared names become parameters
  bool is_var(const std::string& n) const { return std::find(vars.begin(), vars.end(), n) != vars.end(); }
  bool is_const(const std::string& n) const { return std::find(consts.begin(), consts.end(), n) != consts.end(); }
};

const std::string kExpectFactor = "a number, a declared symbol or D(...)";

RawTerm parse_term(Cursor& c, const Symbols& sym) {
  RawTerm t;
  do {
    const Token& tok = c.peek();
    if (tok.kind == Token::Kind::Number) {
      Integer num(c.next().text);
      Integer den = 1;
      if (c.accept("/")) {
        const Token d = c.number();
        den = Integer(d.text);
        if (den == 0) parse_fail(c.line(), d.col, "zero denominator");
      }
      t.coeff.scalar *= make_rational(num, den);
    } else if (tok.kind == Token::Kind::Ident && tok.text == "D") {
      const int col = c.next().col;
      if (t.deriv)
        parse_fail(c.line(), col, "derivative nonlinearity: at most one derivative factor per term");
      c.expect("(");
      Derivative d;
      d.col = col;
      const Token dep = c.ident();
      if (!sym.is_var(dep.text)) parse_fail(c.line(), dep.col, "'" + dep.text + "' is not a declared variable");
      c.expect(",");
      const Token indep = c.ident();
      if (!sym.is_var(indep.text))
        parse_fail(c.line(), indep.col, "'" + indep.text + "' is not a declared variable");
      if (dep.text == indep.text) parse_fail(c.line(), indep.col, "derivative of a variable with respect to itself");
      if (c.accept(",")) {
        const Token s = c.number();
        Integer order(s.text);
        if (order < 1 || order > 1000) parse_fail(c.line(), s.col, "derivative order must be a positive integer");
        d.order = static_cast<int>(order.get_si());
      }
      c.expect(")");
      if (c.is("^")) parse_fail(c.line(), c.peek().col, "derivative nonlinearity: a derivative factor cannot be raised to a power");
      d.dep = dep.text;
      d.indep = indep.text;
      t.deriv = d;
    } else if (tok.kind == Token::Kind::Ident) {
      const Token name = c.next();
      Rational e = 1;
      if (c.accept("^")) e = parse_exponent(c);
      if (sym.is_var(name.text))
        t.powers[name.text] += e;
      else if (sym.is_const(name.text) || (sym.free_params && name.text != "D"))
        t.coeff = t.coeff * Coeff::param(name.text, e);
      else
        parse_fail(c.line(), name.col, "undeclared symbol '" + name.text + "'");
    } else {
      c.expected(kExpectFactor);
    }
  } while (c.accept("*"));
  return t;
}

// sign-prefixed sum of terms up to '=' or end
void parse_sum(Cursor& c, const Symbols& sym, bool negate, std::vector<RawTerm>& out) {
  bool first = true;
  while (true) {
    bool neg = false;
    if (c.accept("-"))
      neg = true;
    else if (!c.accept("+") && !first)
      break;
    RawTerm t = parse_term(c, sym);
    if (neg != negate) t.coeff.scalar = -t.coeff.scalar;
    out.push_back(std::move(t));
    first = false;
    if (!c.is("+") && !c.is("-")) break;
  }
}

DimVector parse_dims(Cursor& c, const std::vector<std::string>& base, bool stop_at_comma) {
  DimVector d(base.size(), 0);
  if (c.peek().kind == Token::Kind::Number && c.peek().text == "1") {
    c.next();
    return d;
  }
  bool any = false;
  while (c.peek().kind == Token::Kind::Ident) {
    const Token name = c.next();
    auto it = std::find(base.begin(), base.end(), name.text);
    if (it == base.end())
      parse_fail(c.line(), name.col, "'" + name.text + "' is not listed in 'dimensions:'");
    Integer e = 1;
    if (c.accept("^")) {
      const bool neg = c.accept("-");
      e = Integer(c.number().text);
      if (neg) e = -e;
    }
    d[it - base.begin()] += e;
    any = true;
  }
  if (!any) c.expected("a dimension product such as 'M L^-1' or '1'");
  if (!(c.at_end() || (stop_at_comma && c.is(",")))) c.expected("a base dimension or end of line");
  return d;
}

struct Line {
  int number;
  std::string body;
  int col0;  // column of body[0]
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Group group_from_product(const std::string& name, Cursor& c, const Symbols& sym) {
  Group g;
  g.name = name;
  std::map<std::string, Rational> exps;
  if (c.peek().kind == Token::Kind::Number && c.peek().text == "1") {
    c.next();
  } else {
    do {
      const Token s = c.ident();
      if (!sym.is_var(s.text) && !sym.is_const(s.text))
        parse_fail(c.line(), s.col, "undeclared symbol '" + s.text + "'");
      Rational e = 1;
      if (c.accept("^")) e = parse_exponent(c);
      exps[s.text] += e;
    } while (c.accept("*"));
  }
  c.expect_end();
  std::vector<std::string> vars_used;
  for (const auto& v : sym.vars)
    if (exps.count(v) && exps[v] != 0) {
      g.exponents.emplace_back(v, exps[v]);
      vars_used.push_back(v);
    }
  for (const auto& k : sym.consts)
    if (exps.count(k) && exps[k] != 0) g.exponents.emplace_back(k, exps[k]);
  if (vars_used.size() > 1)
    parse_fail(c.line(), 1, "group " + name + " mixes variables '" + vars_used[0] + "' and '" + vars_used[1] + "'");
  if (vars_used.size() == 1) {
    g.kind = Group::Kind::VariableScaling;
    g.anchor = vars_used[0];
  } else {
    g.kind = Group::Kind::ConstantOnly;
    for (const auto& [s, e] : g.exponents)
      if (abs(e) == 1) {
        g.anchor = s;
        break;
      }
    if (g.anchor.empty() && !g.exponents.empty()) g.anchor = g.exponents.front().first;
  }
  return g;
}

const std::set<std::string> kKeywords = {"dimensions", "var", "const", "small", "input", "output", "group", "eq", "D"};

}  // namespace

SourceSystem parse_system(const std::string& text) {
  SourceSystem out;
  out.text = text;
  DimensionedSystem& sys = out.system;
  Symbols sym;
  bool have_dims = false;
  std::vector<Line> eq_lines, group_lines;

  auto declare = [&](const Token& name, int line) {
    if (kKeywords.count(name.text)) parse_fail(line, name.col, "'" + name.text + "' is a reserved word");
    if (out.decl_line.count(name.text))
      parse_fail(line, name.col,
                 "duplicate declaration of '" + name.text + "' (first declared on line " +
                     std::to_string(out.decl_line[name.text]) + ")");
    out.decl_line[name.text] = line;
  };
  auto single_name = [&](Cursor& c, std::optional<std::string>& slot, const char* what) {
    const Token name = c.ident();
    c.expect_end();
    if (slot) parse_fail(c.line(), name.col, std::string("'") + what + ":' given twice");
    slot = name.text;
    return name;
  };

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::vector<std::pair<Token, int>> role_refs;  // small/input/output names to check
  while (std::getline(in, raw)) {
    ++lineno;
    std::string content = raw.substr(0, raw.find('#'));
    if (trim(content).empty()) continue;
    Cursor c(tokenize(content, lineno, 1), lineno);
    const Token kw = c.ident();
    if (kw.text == "dimensions") {
      c.expect(":");
      if (have_dims) parse_fail(lineno, kw.col, "'dimensions:' given twice");
      if (!sys.vars.empty() || !sys.consts.empty())
        parse_fail(lineno, kw.col, "'dimensions:' must precede every declaration");
      have_dims = true;
      while (!c.at_end()) {
        const Token d = c.ident();
        if (std::find(sys.base_dims.begin(), sys.base_dims.end(), d.text) != sys.base_dims.end())
          parse_fail(lineno, d.col, "duplicate base dimension '" + d.text + "'");
        sys.base_dims.push_back(d.text);
      }
    } else if (kw.text == "var") {
      const Token name = c.ident();
      declare(name, lineno);
      sys.vars.push_back(name.text);
      sym.vars.push_back(name.text);
      if (c.accept("=")) sys.var_dims[name.text] = parse_dims(c, sys.base_dims, false);
      c.expect_end();
    } else if (kw.text == "const") {
      do {
        const Token name = c.ident();
        declare(name, lineno);
        sys.consts.push_back(name.text);
        sym.consts.push_back(name.text);
        if (c.accept("=")) sys.const_dims[name.text] = parse_dims(c, sys.base_dims, true);
      } while (c.accept(","));
      c.expect_end();
    } else if (kw.text == "small" || kw.text == "input" || kw.text == "output") {
      c.expect(":");
      auto& slot = kw.text == "small" ? sys.small : kw.text == "input" ? sys.input : sys.output;
      role_refs.emplace_back(single_name(c, slot, kw.text.c_str()), lineno);
    } else if (kw.text == "group") {
      group_lines.push_back({lineno, content, 1});
    } else if (kw.text == "eq") {
      if (!eq_lines.empty()) parse_fail(lineno, kw.col, "only one 'eq:' line is allowed");
      eq_lines.push_back({lineno, content, 1});
    } else {
      parse_fail(lineno, kw.col,
                 "expected one of 'dimensions:', 'var', 'const', 'small:', 'input:', 'output:', 'group', 'eq:', found " +
                     describe(kw));
    }
  }

  for (const auto& [tok, line] : role_refs)
    if (!sym.is_var(tok.text)) parse_fail(line, tok.col, "'" + tok.text + "' is not a declared variable");
  if (eq_lines.empty()) parse_fail(lineno + 1, 1, "missing 'eq:' line");

  // equation
  const Line& el = eq_lines.front();
  Cursor c(tokenize(el.body, el.number, el.col0), el.number);
  c.ident();
  c.expect(":");
  std::vector<RawTerm> terms;
  parse_sum(c, sym, false, terms);
  if (!c.is("=")) c.expected("'+', '-', '*' or '='");
  c.next();
  parse_sum(c, sym, true, terms);
  if (!c.at_end()) c.expected("'+', '-', '*' or end of line");

  std::optional<Derivative> pair;
  for (const auto& t : terms)
    if (t.deriv) {
      if (pair && (pair->dep != t.deriv->dep || pair->indep != t.deriv->indep))
        parse_fail(el.number, t.deriv->col,
                   "derivatives of different variable pairs: D(" + pair->dep + "," + pair->indep + ") and D(" +
                       t.deriv->dep + "," + t.deriv->indep + ")");
      if (!pair) pair = t.deriv;
    }
  DiffPoly eq(sys.vars);
  if (pair) eq.set_derivative_pair(pair->dep, pair->indep);
  for (const auto& t : terms) {
    ExpVector e(sys.vars.size(), 0);
    for (const auto& [v, p] : t.powers) e[eq.var_index(v)] = p;
    eq.add_term(t.coeff, e, t.deriv ? t.deriv->order : 0);
  }
  sys.equation = eq;

  for (const auto& gl : group_lines) {
    Cursor gc(tokenize(gl.body, gl.number, gl.col0), gl.number);
    gc.ident();
    const Token name = gc.ident();
    gc.expect("=");
    for (const auto& g : out.groups)
      if (g.name == name.text) parse_fail(gl.number, name.col, "duplicate group '" + name.text + "'");
    if (sym.is_var(name.text) || sym.is_const(name.text))
      parse_fail(gl.number, name.col, "group name '" + name.text + "' clashes with a declared symbol");
    out.groups.push_back(group_from_product(name.text, gc, sym));
  }
  return out;
}

SourceSystem parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

Group parse_group(const std::string& text, const DimensionedSystem& sys) {
  Symbols sym{sys.vars, sys.consts};
  Cursor c(tokenize(text, 1, 1), 1);
  const Token name = c.ident();
  c.expect("=");
  return group_from_product(name.text, c, sym);
}

Poly parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
  Symbols sym{vars, {}, true};
  Cursor c(tokenize(text, 1, 1), 1);
  std::vector<RawTerm> terms;
  parse_sum(c, sym, false, terms);
  if (!c.at_end()) c.expected("'+', '-', '*' or end of input");
  Poly out(vars);
  for (const auto& t : terms) {
    if (t.deriv) parse_fail(1, t.deriv->col, "derivative factors are not allowed here");
    ExpVector e(vars.size(), 0);
    for (const auto& [v, p] : t.powers) e[out.var_index(v)] = p;
    out.add_term(t.coeff, e);
  }
  return out;
}

std::string print_system(const SourceSystem& s) {
  const DimensionedSystem& sys = s.system;
  std::ostringstream out;
  if (!sys.base_dims.empty()) {
    out << "dimensions:";
    for (const auto& d : sys.base_dims) out << ' ' << d;
    out << '\n';
  }
  for (const auto& v : sys.vars) {
    out << "var " << v;
    if (auto it = sys.var_dims.find(v); it != sys.var_dims.end()) out << " = " << dim_to_string(it->second, sys.base_dims);
    out << '\n';
  }
  std::vector<std::string> plain;
  for (const auto& k : sys.consts)
    if (!sys.const_dims.count(k)) plain.push_back(k);
  if (!plain.empty()) {
    out << "const ";
    for (std::size_t i = 0; i < plain.size(); ++i) out << (i ? ", " : "") << plain[i];
    out << '\n';
  }
  for (const auto& k : sys.consts)
    if (auto it = sys.const_dims.find(k); it != sys.const_dims.end())
      out << "const " << k << " = " << dim_to_string(it->second, sys.base_dims) << '\n';
  if (sys.small) out << "small: " << *sys.small << '\n';
  if (sys.input) out << "input: " << *sys.input << '\n';
  if (sys.output) out << "output: " << *sys.output << '\n';
  for (const auto& g : s.groups) out << "group " << to_string(g) << '\n';
  out << "eq: " << to_string(sys.equation) << " = 0\n";
  return out.str();
}

bool structurally_equal(const SourceSystem& a, const SourceSystem& b) {
  const auto& x = a.system;
  const auto& y = b.system;
  // constant order is not significant: the printer groups undimensioned ones first
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (x.base_dims != y.base_dims || x.vars != y.vars || sorted(x.consts) != sorted(y.consts) ||
      x.var_dims != y.var_dims || x.const_dims != y.const_dims || x.input != y.input || x.output != y.output ||
      x.small != y.small)
    return false;
  if (x.equation.vars() != y.equation.vars() || x.equation.independent() != y.equation.independent() ||
      x.equation.dependent() != y.equation.dependent() || !(x.equation == y.equation))
    return false;
  if (a.groups.size() != b.groups.size()) return false;
  for (std::size_t i = 0; i < a.groups.size(); ++i) {
    const Group& g = a.groups[i];
    const Group& h = b.groups[i];
    if (g.name != h.name || g.kind != h.kind || g.anchor != h.anchor || g.exponents != h.exponents) return false;
  }
  return true;
}

DimensionedSystem expansion_order(const DimensionedSystem& sys) {
  if (!sys.input && !sys.output) return sys;
  std::vector<std::string> order;
  if (sys.input) order.push_back(*sys.input);
  for (const auto& v : sys.vars)
    if (v != sys.input && v != sys.output) order.push_back(v);
  if (sys.output) {
    if (sys.input == sys.output) fail(ErrorKind::Domain, "input and output are the same variable");
    order.push_back(*sys.output);
  }
  if (order == sys.vars) return sys;
  DimensionedSystem out = sys;
  out.vars = order;
  const DiffPoly& eq = sys.equation;
  DiffPoly re(order, eq.independent(), eq.dependent());
  for (const auto& t : eq.terms()) {
    ExpVector e(order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) e[i] = t.exps[eq.var_index(order[i])];
    re.add_term(t.coeff, e, t.order);
  }
  out.equation = re;
  return out;
}

}  // namespace toricnp
