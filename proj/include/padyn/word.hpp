#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "padyn/linalg.hpp"
#include "padyn/poly.hpp"

namespace padyn {

inline constexpr int kDefaultMaxDegree = 4096;

/// Generalized Henon map (x, y) -> (p(x) - a y, x); p monic of degree >= 2.
struct HenonFactor {
  PadicElement a;
  UniPoly poly;

  static HenonFactor make(PadicElement a, UniPoly poly);
  int degree() const { return poly.degree(); }
};

/// (a_1 X_1 + F_1(X_2..X_r), ..., a_r X_r + F_r) with F_r constant.
struct TriangularAuto {
  std::vector<PadicElement> a;
  std::vector<MultiPoly> F;
  std::vector<std::vector<MultiPoly>> dF;  // dF[i][j] = dF_i / dX_j

  static TriangularAuto make(std::vector<PadicElement> a, std::vector<MultiPoly> F);
  unsigned dimension() const { return static_cast<unsigned>(a.size()); }
};

/// X -> M X + b with M invertible.
struct AffineAuto {
  Matrix matrix;
  Vector translation;
  Matrix matrix_inverse;

  static AffineAuto make(Matrix matrix, Vector translation);
  unsigned dimension() const { return static_cast<unsigned>(translation.size()); }
};

struct Factor {
  std::variant<HenonFactor, TriangularAuto, AffineAuto> body;
  bool inverted = false;

  unsigned dimension() const;
  Factor inverse() const { return Factor{body, !inverted}; }
};

/// Automorphism of A^r given as a product of factors, written left to right
/// and applied right to left. With a conjugator f the word denotes f^-1 phi f.
class AutoWord {
 public:
  AutoWord(FieldSpec spec, unsigned dimension, std::vector<Factor> factors = {},
           std::vector<Factor> conjugator = {});

  static AutoWord identity(FieldSpec spec, unsigned dimension) { return AutoWord(spec, dimension); }

  FieldSpec spec() const { return spec_; }
  unsigned dimension() const { return dimension_; }
  const std::vector<Factor>& factors() const { return factors_; }
  const std::vector<Factor>& conjugator() const { return conjugator_; }
  bool has_conjugator() const { return !conjugator_.empty(); }

  /// The word with the conjugator dropped.
  AutoWord core() const { return AutoWord(spec_, dimension_, factors_); }
  /// The conjugator f as a standalone word.
  AutoWord conjugator_word() const { return AutoWord(spec_, dimension_, conjugator_); }
  AutoWord with_conjugator(std::vector<Factor> f) const { return AutoWord(spec_, dimension_, factors_, std::move(f)); }

  /// Every core factor is a non-inverted Henon factor and there is no conjugator.
  bool is_henon_product() const;
  /// Every core factor is triangular (either orientation).
  bool is_triangular() const;

 private:
  FieldSpec spec_;
  unsigned dimension_;
  std::vector<Factor> factors_;
  std::vector<Factor> conjugator_;
};

Vector apply(const Factor& f, const Vector& point);
Vector apply(const AutoWord& w, const Vector& point);
/// Image and Jacobian matrix at the point.
std::pair<Vector, Matrix> apply_with_jacobian(const Factor& f, const Vector& point);
std::pair<Vector, Matrix> apply_with_jacobian(const AutoWord& w, const Vector& point);

AutoWord inverse(const AutoWord& w);
/// w^n for n >= 0, conjugator kept.
AutoWord power(const AutoWord& w, unsigned n);

/// Factors of the full map in the order they are applied.
std::vector<Factor> application_sequence(const AutoWord& w);

/// Expanded coordinate polynomials of the full map (conjugator included).
std::vector<MultiPoly> compose_symbolic(const AutoWord& w, int max_degree = kDefaultMaxDegree);

/// Factor-wise reduction: coefficients replaced by canonical lifts of their
/// residues. NonIntegralCoefficient or DegenerateReduction on failure.
AutoWord reduce_word(const AutoWord& w);

std::string describe(const Factor& f);

}  // namespace padyn
