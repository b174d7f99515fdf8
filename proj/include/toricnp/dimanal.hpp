#pragma once

// Dimensional analysis: homogeneity, inferred constant dimensions, the
// variable-constant toric ideal, dimensionless group selection and
// non-dimensionalisation.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricnp/diffpoly.hpp"
#include "toricnp/error.hpp"
#include "toricnp/exactmath.hpp"
#include "toricnp/groebner.hpp"

namespace toricnp {

/// Integer exponents over the ordered base dimensions.
using DimVector = IntVector;
using DimMap = std::map<std::string, DimVector>;

std::string dim_to_string(const DimVector& d, const std::vector<std::string>& base_dims);

struct DimensionedSystem {
  std::vector<std::string> base_dims;
  std::vector<std::string> vars;    // declaration order; indeterminates of `equation`
  std::vector<std::string> consts;  // declaration order; parameters of `equation`
  DimMap var_dims;                  // declared variable dimensions
  DimMap const_dims;                // declared constant dimensions (usually empty)
  DiffPoly equation;
  std::optional<std::string> input;
  std::optional<std::string> output;
  std::optional<std::string> small;
};

DimVector term_dimension(const DiffPoly& eq, const DiffTerm& term, const DimMap& dims,
                         std::size_t n_dims);

struct TermDimension {
  std::string term;
  DimVector dim;
};

/// Thrown by check_homogeneity; carries every term with its dimension.
class InhomogeneousError : public Error {
 public:
  InhomogeneousError(const std::string& what, std::vector<TermDimension> terms)
      : Error(ErrorKind::Inhomogeneous, what), terms_(std::move(terms)) {}
  const std::vector<TermDimension>& terms() const { return terms_; }

 private:
  std::vector<TermDimension> terms_;
};

/// Common dimension of all terms; throws InhomogeneousError otherwise.
DimVector check_homogeneity(const DimensionedSystem& sys, const DimMap& dims);

/// Variables without declared dimensions whose degree is the same in every
/// term get the zero vector. Returns one notice per such variable; throws
/// if an undeclared variable has non-uniform degree.
std::vector<std::string> assign_uniform_variables(DimensionedSystem& sys);

/// Common term dimension used for inference: the dimension of the terms that
/// carry no unknown constant if any, else zero.
DimVector inference_beta(const DimensionedSystem& sys);

/// Dimensions of the constants without declared ones, forced by
/// homogeneity against `beta`.
DimMap infer_constant_dimensions(const DimensionedSystem& sys, const DimMap& var_dims, const DimVector& beta);

struct VariableConstantIdeal {
  std::vector<std::string> names;  // vars then consts
  IntMatrix matrix;                // one row per name
  std::vector<Binomial> generators;
  bool degenerate = false;         // every symbol dimensionless
};

VariableConstantIdeal variable_constant_ideal(const DimensionedSystem& sys, const DimMap& full_dims);

struct Group {
  enum class Kind { VariableScaling, ConstantOnly };
  std::string name;
  std::string anchor;  // the variable (or non-reference constant) the group is built around
  Kind kind = Kind::VariableScaling;
  std::vector<std::pair<std::string, Rational>> exponents;  // symbol order of the system

  Rational exponent(const std::string& symbol) const;
};

struct GroupSelection {
  std::vector<std::string> reference_consts;
  std::vector<Group> groups;
  std::vector<std::string> failures;  // "cannot separate variable v"
};

/// Picks one group per variable and one per non-reference constant. The
/// reference constants are the first dimensionally independent constants in
/// declaration order; each group is the generator of the variable-constant
/// ideal eliminated down to its anchor plus the references.
GroupSelection select_groups(const VariableConstantIdeal& ideal, const DimensionedSystem& sys);

/// Divides every exponent by k; the anchor exponent must be divisible by k.
Group root_extract_group(const Group& g, long k);

bool is_dimensionless(const Group& g, const DimMap& dims, std::size_t n_dims);

/// Rewrites the equation in the group variables. Variable groups are
/// root-extracted (or inverted) so the anchor has exponent 1; the result is
/// divided by the magnitude of the first term's coefficient and every
/// coefficient is rewritten over the constant-only groups.
DiffPoly nondimensionalize(const DimensionedSystem& sys, const std::vector<Group>& groups);

std::string to_string(const Group& g);

}  // namespace toricnp
