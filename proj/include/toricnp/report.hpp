#pragma once

// Command pipelines behind the CLI and their text / JSON reports. Every JSON
// report carries "schema": 1 and "command".

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toricnp/diffnp.hpp"
#include "toricnp/dimanal.hpp"
#include "toricnp/dsl.hpp"
#include "toricnp/npexpand.hpp"
#include "toricnp/polytope.hpp"

namespace toricnp {

using json = nlohmann::ordered_json;

// ---- nondim

struct NondimResult {
  DimensionedSystem system;  // uniform variables made dimensionless
  std::vector<std::string> notices;
  DimVector beta;
  DimMap inferred;  // constants whose dimensions were forced by homogeneity
  DimMap full_dims;
  VariableConstantIdeal ideal;
  GroupSelection selection;
  std::vector<Group> groups;  // the set used for the reduction
  DiffPoly reduced;
};

/// Explicit groups override automatic ones: a variable group replaces the
/// automatic group of its anchor; any explicit constant-only group replaces
/// all automatic constant-only groups. Later entries win on equal names.
std::vector<Group> merge_groups(const std::vector<Group>& automatic, const std::vector<Group>& explicit_groups);

NondimResult run_nondim(const SourceSystem& src, const std::vector<Group>& extra_groups = {});
json nondim_json(const NondimResult& r);
std::string nondim_text(const NondimResult& r);

json inhomogeneous_json(const InhomogeneousError& e, const std::vector<std::string>& base_dims);
std::string inhomogeneous_text(const InhomogeneousError& e, const std::vector<std::string>& base_dims);

// ---- toric / kernel

struct MatrixFile {
  IntMatrix matrix;
  std::vector<std::string> names;  // one per row; x1.. when unnamed
};

/// "d k", then d rows of k integers. A row is named by a `# name` comment on
/// the line before it or at its end.
MatrixFile parse_matrix(const std::string& text);
MatrixFile read_matrix_file(const std::string& path);

json toric_json(const MatrixFile& m, const std::vector<Binomial>& gens);
std::string toric_text(const MatrixFile& m, const std::vector<Binomial>& gens);
json kernel_json(const MatrixFile& m, const IntMatrix& kernel);
std::string kernel_text(const MatrixFile& m, const IntMatrix& kernel);

// ---- polytope

struct PolytopeResult {
  std::vector<std::string> vars;
  bool kruskal = false;  // points from the Kruskal-Newton rule
  LatticePolytope hull;
  std::vector<DistinguishedFacet> distinguished;
};

PolytopeResult run_polytope(const DimensionedSystem& sys, bool diff);
json polytope_json(const PolytopeResult& r);
std::string polytope_text(const PolytopeResult& r);

// ---- expand

struct ExpandOptions {
  std::size_t facet = 0;              // index into the distinguished facets
  std::optional<Rational> root;       // empty: smallest simple rational root
  int order = 4;
  std::vector<Rational> ancillary;
  std::map<std::string, Rational> params;
};

struct ExpandResult {
  std::vector<std::string> vars;
  DistinguishedFacet facet;
  FacetData data;
  RootResult roots;
  Rational root;
  PuiseuxSeries series;
  ResidualOrder residual;
  Rational expected;  // lead + order * gap; the residual must exceed it
  bool residual_ok = false;
};

ExpandResult run_expand(const DimensionedSystem& sys, const ExpandOptions& opt);
json expand_json(const ExpandResult& r);
std::string expand_text(const ExpandResult& r);

// ---- facet-ode / expand-diff

struct FacetOdeResult {
  PolytopeResult polytope;
  DistinguishedFacet facet;
  std::size_t facet_index = 0;
  FacetOde ode;
  PowerLawSolution powerlaw;
};

FacetOdeResult run_facet_ode(const DimensionedSystem& sys, std::size_t facet);
json facet_ode_json(const FacetOdeResult& r);
std::string facet_ode_text(const FacetOdeResult& r);

struct ExpandDiffOptions {
  std::size_t facet = 0;
  int order = 3;
  std::map<std::string, Rational> params;
  std::optional<Rational> sigma;  // required when sigma is free or has several roots
};

struct ExpandDiffResult {
  FacetOdeResult facet_ode;
  DiffPoly equation;  // scaled equation, parameters evaluated
  Rational sigma;
  Rational rho;
  PuiseuxSeries series;
  std::vector<std::pair<Rational, Rational>> corrections;  // (exponent - rho, z_k)
  std::vector<std::optional<Rational>> residual_orders;    // after 0..order corrections
  Rational bound;
};

ExpandDiffResult run_expand_diff(const DimensionedSystem& sys, const ExpandDiffOptions& opt);
json expand_diff_json(const ExpandDiffResult& r);
std::string expand_diff_text(const ExpandDiffResult& r);

// ---- emit-z

struct EmitResult {
  DiffPoly equation;
  std::vector<std::string> consts;
};

EmitResult run_emit_z(const DimensionedSystem& sys, const PerturbationTrial& trial);
json emit_json(const EmitResult& r);
/// A DSL document declaring every symbol of the z-equation.
std::string emit_text(const EmitResult& r);

}  // namespace toricnp
