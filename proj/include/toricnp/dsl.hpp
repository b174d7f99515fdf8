#pragma once

// Line-oriented equation DSL:
//
//   dimensions: M L T
//   var x = M L^-3          # dimension product, or 1
//   var psi                 # dimension left open
//   const a, b              # dimensions inferred
//   const hbar = M L^2 T^-1
//   small: eps
//   input: eps
//   output: y
//   group X = x*a^2*b^-3*d
//   eq: a*y^3 + b*x*y^2 = 0
//
// Terms are products of a rational coefficient, symbol powers (x^3, x^-1,
// x^(1/2)) and at most one derivative factor D(y, x, s).

#include <map>
#include <string>
#include <vector>

#include "toricnp/dimanal.hpp"

namespace toricnp {

struct SourceSystem {
  std::string text;
  DimensionedSystem system;
  std::vector<Group> groups;              // explicit `group` lines
  std::map<std::string, int> decl_line;   // symbol -> declaration line
};

/// Throws Error(Parse) with "line L, column C: ..." messages.
SourceSystem parse_system(const std::string& text);
SourceSystem parse_system_file(const std::string& path);

/// Parses "name = product" (the part after `group`) against a system.
Group parse_group(const std::string& text, const DimensionedSystem& sys);

/// A sum of terms over `vars`; any other name is taken as a parameter.
Poly parse_polynomial(const std::string& text, const std::vector<std::string>& vars);

/// Canonical DSL text; parse_system(print_system(s)) reproduces s.
std::string print_system(const SourceSystem& s);

bool structurally_equal(const SourceSystem& a, const SourceSystem& b);

/// Variables reordered so `input` is first and `output` last.
DimensionedSystem expansion_order(const DimensionedSystem& sys);

}  // namespace toricnp
