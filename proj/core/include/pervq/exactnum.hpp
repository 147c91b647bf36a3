#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pervq {

// Exact rational; GMP keeps it in lowest terms with a positive denominator.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// Canonical text: "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Accepts "[+-]digits" or "[+-]digits/digits". Throws ParseError on anything
// else, including a zero denominator.
Rational parse_rational(std::string_view text);

// Element of Q(i).
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRational i() { return {0, 1}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  // Throws SingularMatrix on zero.
  GaussRational inverse() const;

  double re_double() const { return re_.get_d(); }
  double im_double() const { return im_.get_d(); }

  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o) { return *this *= o.inverse(); }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // Human-readable "a", "bi", "a+bi".
  std::string to_string() const;

 private:
  Rational re_;
  Rational im_;
};

// Parses "a", "bi", "a+bi", "i", "-i", with a and b rationals ("3/2-1/2i").
GaussRational parse_gauss(std::string_view text);

// Dense row-major matrix over Q(i). Shapes with zero rows or columns are
// legal and keep their other dimension.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<GaussRational> entries);
  Matrix(std::initializer_list<std::initializer_list<GaussRational>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix column(std::span<const GaussRational> entries);
  static Matrix row(std::span<const GaussRational> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;

  const GaussRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  GaussRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const GaussRational> entries() const { return data_; }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix transpose() const;

  Matrix operator-() const;
  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const GaussRational& s, const Matrix& m);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussRational> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(std::span<const Matrix> blocks);

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Reduced row echelon form; the pivot in each column is the first nonzero
// entry at or below the current row.
RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
bool is_invertible(const Matrix& m);
GaussRational determinant(const Matrix& m);

// Throws DimensionMismatch for non-square input, SingularMatrix when det = 0.
Matrix inverse(const Matrix& m);

// Columns span {x : m x = 0}; one column per free column j of rref(m), with a
// 1 in row j and minus the reduced entries in the pivot rows.
Matrix kernel_basis(const Matrix& m);

struct Cokernel {
  Matrix projection;  // (N - rank) x N, full row rank, projection * m = 0
  std::size_t dim = 0;
};

// Rows are the reduced row echelon basis of the left null space of m, so each
// row has leading entry 1 and the pivot columns of the projection form an
// identity block.
Cokernel cokernel_projection(const Matrix& m);

// Exact solution X of a X = b, if one exists (the free variables are set to 0).
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

}  // namespace pervq
