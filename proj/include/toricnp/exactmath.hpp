#pragma once

// Exact integer / rational scalars and integer matrix algebra.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace toricnp {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

/// Builds a canonical rational num/den. Throws on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den = 1);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
bool is_integer(const Rational& q);

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  IntMatrix transpose() const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntVector operator*(const IntMatrix& a, std::span<const Integer> v);

struct HermiteResult {
  IntMatrix H;  // column-style Hermite normal form
  IntMatrix U;  // unimodular, M * U == H
};

/// Column-style Hermite normal form: H = M*U is in column echelon form with
/// positive pivots, zero columns last, and entries left of each pivot reduced
/// into [0, pivot).
HermiteResult hermite_normal_form(const IntMatrix& m);

/// Integer basis of {v : A^T v = 0} for a d x k matrix A, returned as the
/// columns of a d x (d - rank A) matrix in Hermite form. May have zero columns.
IntMatrix integer_kernel(const IntMatrix& a);

/// LLL-reduced basis (delta = 3/4) of the lattice spanned by the columns of
/// `basis`, which must be linearly independent. Zero columns are dropped.
IntMatrix lll_reduce(const IntMatrix& basis);

/// v / gcd(v) with the first nonzero entry made positive.
IntVector primitive(std::span<const Integer> v);

std::size_t rank(const IntMatrix& m);
Integer determinant(const IntMatrix& m);

/// True iff v is an integer combination of the columns of `basis`.
bool in_column_lattice(const IntMatrix& basis, std::span<const Integer> v);

/// Solves M x = b over the rationals. Empty when inconsistent; free variables
/// are set to zero.
std::optional<std::vector<Rational>> solve_rational(const std::vector<std::vector<Rational>>& m,
                                                    const std::vector<Rational>& b);

IntVector to_int_vector(std::initializer_list<long> values);
std::string to_string(std::span<const Integer> v);

}  // namespace toricnp
