#include "posetlab/matrix.hpp"

namespace posetlab {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Field::Field(unsigned prime) : p(prime) {
  if (!is_prime(prime) || prime > 255) throw DomainError("InvalidField", "p must be a prime < 256");
}

uint8_t Field::inv(uint8_t a) const {
  if (a == 0) throw DomainError("InvalidField", "inverse of zero");
  // p is tiny, scan.
  for (unsigned x = 1; x < p; ++x)
    if ((x * a) % p == 1) return uint8_t(x);
  throw DomainError("InvalidField", "no inverse");
}

Matrix Matrix::identity(int n, Field f) {
  Matrix m(n, n, f);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

bool Matrix::is_zero() const {
  for (uint8_t v : a_)
    if (v) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (r_ != c_) return false;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (c_ != o.r_ || f_ != o.f_) throw ShapeMismatch("matrix product");
  Matrix out(r_, o.c_, f_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      uint8_t v = at(i, k);
      if (!v) continue;
      for (int j = 0; j < o.c_; ++j) {
        uint8_t prod = f_.mul(v, o.at(k, j));
        if (prod) out.set(i, j, f_.add(out.at(i, j), prod));
      }
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_ || f_ != o.f_) throw ShapeMismatch("matrix sum");
  Matrix out(r_, c_, f_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) out.set(i, j, f_.add(at(i, j), o.at(i, j)));
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_ || f_ != o.f_) throw ShapeMismatch("matrix difference");
  Matrix out(r_, c_, f_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) out.set(i, j, f_.sub(at(i, j), o.at(i, j)));
  return out;
}

Matrix Matrix::scaled(uint8_t c) const {
  Matrix out(r_, c_, f_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) out.set(i, j, f_.mul(at(i, j), c));
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(c_, r_, f_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) out.set(j, i, at(i, j));
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.field() != b.field()) throw ShapeMismatch("hstack");
  Matrix out(a.rows(), a.cols() + b.cols(), a.field());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out.set(i, j, a.at(i, j));
    for (int j = 0; j < b.cols(); ++j) out.set(i, a.cols() + j, b.at(i, j));
  }
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols() || a.field() != b.field()) throw ShapeMismatch("vstack");
  Matrix out(a.rows() + b.rows(), a.cols(), a.field());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.set(i, j, a.at(i, j));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) out.set(a.rows() + i, j, b.at(i, j));
  return out;
}

Rref row_reduce_generic(const Matrix& m) {
  Matrix a = m;
  const Field f = m.field();
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < a.rows(); ++i)
      if (a.at(i, col)) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < a.cols(); ++j) {
        uint8_t t = a.at(row, j);
        a.set(row, j, a.at(piv, j));
        a.set(piv, j, t);
      }
    uint8_t inv = f.inv(a.at(row, col));
    if (inv != 1)
      for (int j = 0; j < a.cols(); ++j) a.set(row, j, f.mul(a.at(row, j), inv));
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row) continue;
      uint8_t v = a.at(i, col);
      if (!v) continue;
      for (int j = 0; j < a.cols(); ++j) a.set(i, j, f.sub(a.at(i, j), f.mul(v, a.at(row, j))));
    }
    pivots.push_back(col);
    ++row;
  }
  return {a, pivots};
}

namespace {

// GF(2) elimination on uint64-packed rows, same pivot rule as the generic
// path bit for bit.
Rref row_reduce_gf2(const Matrix& m) {
  const int rows = m.rows(), cols = m.cols();
  const int words = (cols + 63) / 64;
  std::vector<uint64_t> a(size_t(rows) * words, 0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (m.at(i, j)) a[size_t(i) * words + (j >> 6)] |= uint64_t(1) << (j & 63);

  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    const int w = col >> 6;
    const uint64_t bit = uint64_t(1) << (col & 63);
    int piv = -1;
    for (int i = row; i < rows; ++i)
      if (a[size_t(i) * words + w] & bit) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != row)
      for (int k = 0; k < words; ++k) std::swap(a[size_t(row) * words + k], a[size_t(piv) * words + k]);
    for (int i = 0; i < rows; ++i) {
      if (i == row) continue;
      if (a[size_t(i) * words + w] & bit)
        for (int k = 0; k < words; ++k) a[size_t(i) * words + k] ^= a[size_t(row) * words + k];
    }
    pivots.push_back(col);
    ++row;
  }

  Matrix out(rows, cols, m.field());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (a[size_t(i) * words + (j >> 6)] >> (j & 63) & 1) out.set(i, j, 1);
  return {out, pivots};
}

}  // namespace

Rref row_reduce(const Matrix& m) {
  if (m.field().p == 2) return row_reduce_gf2(m);
  return row_reduce_generic(m);
}

int rank(const Matrix& m) { return int(row_reduce(m).pivots.size()); }

Matrix nullspace_basis(const Matrix& m) {
  Rref r = row_reduce(m);
  const Field f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : r.pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Matrix basis(m.cols(), int(free_cols.size()), f);
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    basis.set(fc, int(k), 1);
    for (size_t i = 0; i < r.pivots.size(); ++i) basis.set(r.pivots[i], int(k), f.neg(r.mat.at(int(i), fc)));
  }
  return basis;
}

Matrix image_basis(const Matrix& m) {
  // Reduced echelon basis of the column space: reduce the transpose, read the
  // nonzero rows back as columns.
  Rref r = row_reduce(m.transposed());
  Matrix out(m.rows(), int(r.pivots.size()), m.field());
  for (size_t k = 0; k < r.pivots.size(); ++k)
    for (int i = 0; i < m.rows(); ++i) out.set(i, int(k), r.mat.at(int(k), i));
  return out;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.field() != b.field()) throw ShapeMismatch("solve");
  Rref r = row_reduce(hstack(a, b));
  // Inconsistent iff some pivot lands in the b block.
  for (int p : r.pivots)
    if (p >= a.cols()) return std::nullopt;
  Matrix x(a.cols(), b.cols(), a.field());
  for (size_t i = 0; i < r.pivots.size(); ++i)
    for (int j = 0; j < b.cols(); ++j) x.set(r.pivots[i], j, r.mat.at(int(i), a.cols() + j));
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (rank(m) != m.rows()) return std::nullopt;
  return solve(m, Matrix::identity(m.rows(), m.field()));
}

Complement complement_of_image(const Matrix& basis) {
  const Field f = basis.field();
  const int n = basis.rows();
  Rref r = row_reduce(basis.transposed());  // rows = echelon basis of the column space
  std::vector<bool> is_pivot(n, false);
  for (int p : r.pivots) is_pivot[p] = true;
  std::vector<int> rest;
  for (int j = 0; j < n; ++j)
    if (!is_pivot[j]) rest.push_back(j);

  Matrix proj(int(rest.size()), n, f);
  Matrix sect(n, int(rest.size()), f);
  for (size_t k = 0; k < rest.size(); ++k) {
    proj.set(int(k), rest[k], 1);
    sect.set(rest[k], int(k), 1);
    // Subtract the span component determined by the pivot coordinates.
    for (size_t i = 0; i < r.pivots.size(); ++i)
      proj.set(int(k), r.pivots[i], f.neg(r.mat.at(int(i), rest[k])));
  }
  return {proj, sect};
}

}  // namespace posetlab
