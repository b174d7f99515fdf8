#include "toricnp/exactmath.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "toricnp/error.hpp"

namespace toricnp {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) fail(ErrorKind::Domain, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    return make_rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::Domain, "not a rational number: '" + text + "'");
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }
bool is_integer(const Rational& q) { return q.get_den() == 1; }

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorKind::Domain, "ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) fail(ErrorKind::Domain, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& z) { return z == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorKind::Domain, "matrix dimension mismatch in product");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntVector operator*(const IntMatrix& a, std::span<const Integer> v) {
  if (a.cols() != v.size()) fail(ErrorKind::Domain, "matrix-vector dimension mismatch");
  IntVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

namespace {

// col_p <- x*col_p + y*col_q ; col_q <- u*col_p + v*col_q (old values)
void combine_columns(IntMatrix& m, std::size_t p, std::size_t q, const Integer& x, const Integer& y,
                     const Integer& u, const Integer& v) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer a = m(i, p), b = m(i, q);
    m(i, p) = x * a + y * b;
    m(i, q) = u * a + v * b;
  }
}

void negate_column(IntMatrix& m, std::size_t p) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, p) = -m(i, p);
}

void swap_columns(IntMatrix& m, std::size_t p, std::size_t q) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, p), m(i, q));
}

// col_q <- col_q - f*col_p
void subtract_column(IntMatrix& m, std::size_t q, std::size_t p, const Integer& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, q) -= f * m(i, p);
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.cols());
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < h.rows() && pivot < h.cols(); ++i) {
    for (std::size_t j = pivot + 1; j < h.cols(); ++j) {
      if (h(i, j) == 0) continue;
      if (h(i, pivot) == 0) {
        swap_columns(h, pivot, j);
        swap_columns(u, pivot, j);
        continue;
      }
      Integer a = h(i, pivot), b = h(i, j), g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer ag = a / g, bg = b / g;
      combine_columns(h, pivot, j, x, y, -bg, ag);
      combine_columns(u, pivot, j, x, y, -bg, ag);
    }
    if (h(i, pivot) == 0) continue;
    if (h(i, pivot) < 0) {
      negate_column(h, pivot);
      negate_column(u, pivot);
    }
    for (std::size_t j = 0; j < pivot; ++j) {
      Integer f;
      mpz_fdiv_q(f.get_mpz_t(), h(i, j).get_mpz_t(), h(i, pivot).get_mpz_t());
      if (f == 0) continue;
      subtract_column(h, j, pivot, f);
      subtract_column(u, j, pivot, f);
    }
    ++pivot;
  }
  return {std::move(h), std::move(u)};
}

IntMatrix integer_kernel(const IntMatrix& a) {
  auto [h, u] = hermite_normal_form(a.transpose());
  std::vector<IntVector> basis;
  for (std::size_t j = 0; j < h.cols(); ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < h.rows() && zero; ++i) zero = h(i, j) == 0;
    if (zero) basis.push_back(u.column(j));
  }
  if (basis.empty()) return IntMatrix(a.rows(), 0);
  // The unimodular transform gives some lattice basis; its Hermite form is canonical.
  return hermite_normal_form(IntMatrix::from_columns(a.rows(), basis)).H;
}

IntMatrix lll_reduce(const IntMatrix& basis) {
  std::vector<IntVector> b;
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    IntVector c = basis.column(j);
    if (std::any_of(c.begin(), c.end(), [](const Integer& x) { return x != 0; })) b.push_back(std::move(c));
  }
  const std::size_t n = b.size();
  auto dot = [](const auto& x, const auto& y) {
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += Rational(x[i]) * Rational(y[i]);
    return s;
  };
  std::vector<std::vector<Rational>> star(n);
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
  std::vector<Rational> norm(n);
  // Gram-Schmidt from scratch; the bases here have a handful of short columns
  auto orthogonalize = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      star[i].assign(b[i].begin(), b[i].end());
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(b[i], star[j]) / norm[j];
        for (std::size_t t = 0; t < star[i].size(); ++t) star[i][t] -= mu[i][j] * star[j][t];
      }
      norm[i] = dot(star[i], star[i]);
      if (norm[i] == 0) fail(ErrorKind::Domain, "lll_reduce: columns are linearly dependent");
    }
  };
  auto nearest = [](const Rational& q) {
    Rational h = q + Rational(1, 2);
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    return f;
  };
  orthogonalize();
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) {
      const Integer r = nearest(mu[k][j]);
      if (r == 0) continue;
      for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= r * b[j][t];
      orthogonalize();
    }
    if (norm[k] >= (Rational(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      orthogonalize();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return IntMatrix::from_columns(basis.rows(), b);
}

IntVector primitive(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) fail(ErrorKind::Domain, "zero vector has no primitive form");
  IntVector out(v.begin(), v.end());
  auto lead = std::find_if(out.begin(), out.end(), [](const Integer& x) { return x != 0; });
  if (*lead < 0) g = -g;
  for (auto& x : out) x /= g;
  return out;
}

std::size_t rank(const IntMatrix& m) {
  // fraction-free elimination on a copy
  IntMatrix w = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < w.cols() && r < w.rows(); ++c) {
    std::size_t p = r;
    while (p < w.rows() && w(p, c) == 0) ++p;
    if (p == w.rows()) continue;
    for (std::size_t j = 0; j < w.cols(); ++j) std::swap(w(r, j), w(p, j));
    for (std::size_t i = r + 1; i < w.rows(); ++i) {
      if (w(i, c) == 0) continue;
      Integer f = w(i, c), g = w(r, c);
      for (std::size_t j = c; j < w.cols(); ++j) w(i, j) = w(i, j) * g - w(r, j) * f;
    }
    ++r;
  }
  return r;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::Domain, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix w = m;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && w(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(w(k, j), w(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = w(i, j) * w(k, k) - w(i, k) * w(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        w(i, j) = t;
      }
    prev = w(k, k);
  }
  return sign * w(n - 1, n - 1);
}

bool in_column_lattice(const IntMatrix& basis, std::span<const Integer> v) {
  if (basis.rows() != v.size()) fail(ErrorKind::Domain, "lattice membership: length mismatch");
  IntVector rest(v.begin(), v.end());
  if (basis.cols() == 0) return std::all_of(rest.begin(), rest.end(), [](const Integer& x) { return x == 0; });
  const IntMatrix h = hermite_normal_form(basis).H;
  std::size_t col = 0;
  for (std::size_t i = 0; i < h.rows() && col < h.cols(); ++i) {
    if (h(i, col) == 0) {
      if (rest[i] != 0) return false;
      continue;
    }
    if (rest[i] % h(i, col) != 0) return false;
    Integer f = rest[i] / h(i, col);
    for (std::size_t r = 0; r < h.rows(); ++r) rest[r] -= f * h(r, col);
    ++col;
  }
  return std::all_of(rest.begin(), rest.end(), [](const Integer& x) { return x == 0; });
}

std::optional<std::vector<Rational>> solve_rational(const std::vector<std::vector<Rational>>& m,
                                                    const std::vector<Rational>& b) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<std::vector<Rational>> w = m;
  std::vector<Rational> rhs = b;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && w[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(w[p], w[r]);
    std::swap(rhs[p], rhs[r]);
    Rational inv = 1 / w[r][c];
    for (std::size_t j = c; j < cols; ++j) w[r][j] *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || w[i][c] == 0) continue;
      Rational f = w[i][c];
      for (std::size_t j = c; j < cols; ++j) w[i][j] -= f * w[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (rhs[i] != 0) return std::nullopt;
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

IntVector to_int_vector(std::initializer_list<long> values) {
  IntVector v;
  for (long x : values) v.emplace_back(x);
  return v;
}

std::string to_string(std::span<const Integer> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

}  // namespace toricnp
