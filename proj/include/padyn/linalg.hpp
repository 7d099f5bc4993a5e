#pragma once

#include <vector>

#include "padyn/padic.hpp"

namespace padyn {

using Vector = std::vector<PadicElement>;
using Matrix = std::vector<Vector>;

Matrix identity_matrix(FieldSpec spec, std::size_t n);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& v);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);

/// Gaussian elimination with minimal-valuation pivots. Throws DivisionByZero
/// when the matrix is singular at working precision.
PadicElement determinant(Matrix a);
Matrix inverse(const Matrix& a);
Vector solve(Matrix a, Vector b);

}  // namespace padyn
