#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "posetlab/errors.hpp"

namespace posetlab {

bool is_prime(unsigned p);

// Prime field GF(p). Default is GF(2).
struct Field {
  unsigned p = 2;
  Field() = default;
  explicit Field(unsigned prime);
  bool operator==(const Field& o) const { return p == o.p; }
  bool operator!=(const Field& o) const { return p != o.p; }

  uint8_t neg(uint8_t a) const { return a ? uint8_t(p - a) : 0; }
  uint8_t add(uint8_t a, uint8_t b) const { unsigned s = unsigned(a) + b; return uint8_t(s >= p ? s - p : s); }
  uint8_t sub(uint8_t a, uint8_t b) const { return add(a, neg(b)); }
  uint8_t mul(uint8_t a, uint8_t b) const { return uint8_t((unsigned(a) * b) % p); }
  uint8_t inv(uint8_t a) const;
};

// Dense matrix over GF(p), row-major, acting on column vectors. Matrices with
// zero rows or columns are valid and stand for maps to/from the zero space.
class Matrix {
public:
  Matrix() : Matrix(0, 0, Field()) {}
  Matrix(int rows, int cols, Field f) : r_(rows), c_(cols), f_(f), a_(size_t(rows) * cols, 0) {}

  static Matrix identity(int n, Field f);

  int rows() const { return r_; }
  int cols() const { return c_; }
  const Field& field() const { return f_; }

  uint8_t at(int i, int j) const { return a_[size_t(i) * c_ + j]; }
  void set(int i, int j, uint8_t v) { a_[size_t(i) * c_ + j] = uint8_t(v % f_.p); }

  bool is_zero() const;
  bool is_identity() const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(uint8_t c) const;
  Matrix transposed() const;

  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && f_ == o.f_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
  int r_, c_;
  Field f_;
  std::vector<uint8_t> a_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

struct Rref {
  Matrix mat;
  std::vector<int> pivots;  // pivot column per nonzero row, ascending
};

// Gaussian elimination with the fixed pivot rule: columns scanned left to
// right, pivot row is the first row (top-down) with a nonzero entry. Over
// GF(2) elimination runs on machine-word packed rows; results are identical
// to the generic path.
Rref row_reduce(const Matrix& m);
Rref row_reduce_generic(const Matrix& m);  // unpacked reference path, any p

int rank(const Matrix& m);

// Columns span the kernel; one basis vector per free column, in ascending
// free-column order, with the free coordinate set to 1.
Matrix nullspace_basis(const Matrix& m);

// Columns span the image; the basis is the reduced echelon basis of the
// column space (unique, deterministic).
Matrix image_basis(const Matrix& m);

// Solves A x = b columnwise (b may have several columns). Free variables are
// set to 0. Empty optional when some column is inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& m);

// Projection pi : k^n -> k^(n-r) whose kernel is exactly the column space of
// `basis` (the complement is read off the non-pivot coordinates), plus the
// section sigma with pi*sigma = id. Used for cokernels and colimits.
struct Complement {
  Matrix projection;  // (n-r) x n
  Matrix section;     // n x (n-r)
};
Complement complement_of_image(const Matrix& basis);

}  // namespace posetlab
