#include "padyn/linalg.hpp"

#include <climits>
#include <utility>

#include "padyn/error.hpp"

namespace padyn {

namespace {

// Row with the smallest-valuation nonzero entry in column col at or below row.
std::size_t pivot_row(const Matrix& a, std::size_t col) {
  std::size_t best = a.size();
  int best_val = INT_MAX;
  for (std::size_t r = col; r < a.size(); ++r) {
    if (a[r][col].is_zero()) continue;
    int v = *a[r][col].valuation();
    if (v < best_val) {
      best_val = v;
      best = r;
    }
  }
  if (best == a.size()) fail(ErrorKind::DivisionByZero, "singular matrix");
  return best;
}

}  // namespace

Matrix identity_matrix(FieldSpec spec, std::size_t n) {
  Matrix m(n, Vector(n, PadicElement::zero(spec)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = PadicElement::one(spec);
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  const FieldSpec spec = a.front().front().spec();
  Matrix c(a.size(), Vector(b.front().size(), PadicElement::zero(spec)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[k].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
  Vector out(a.size(), PadicElement::zero(v.front().spec()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  }
  return out;
}

Vector operator+(const Vector& a, const Vector& b) {
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

PadicElement determinant(Matrix a) {
  const FieldSpec spec = a.front().front().spec();
  PadicElement det = PadicElement::one(spec);
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t r;
    try {
      r = pivot_row(a, col);
    } catch (const Error&) {
      return PadicElement::zero(spec);
    }
    if (r != col) {
      std::swap(a[r], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a[i][col].is_zero()) continue;
      PadicElement factor = a[i][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= factor * a[col][j];
    }
  }
  return det;
}

Vector solve(Matrix a, Vector b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t r = pivot_row(a, col);
    std::swap(a[r], a[col]);
    std::swap(b[r], b[col]);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a[i][col].is_zero()) continue;
      PadicElement factor = a[i][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= factor * a[col][j];
      b[i] -= factor * b[col];
    }
  }
  Vector x(n, PadicElement::zero(b.front().spec()));
  for (std::size_t i = n; i-- > 0;) {
    PadicElement s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

Matrix inverse(const Matrix& a) {
  const std::size_t n = a.size();
  const FieldSpec spec = a.front().front().spec();
  Matrix inv(n, Vector(n, PadicElement::zero(spec)));
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n, PadicElement::zero(spec));
    e[j] = PadicElement::one(spec);
    Vector col = solve(a, e);
    for (std::size_t i = 0; i < n; ++i) inv[i][j] = col[i];
  }
  return inv;
}

}  // namespace padyn
