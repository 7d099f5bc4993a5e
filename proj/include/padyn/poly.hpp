#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "padyn/padic.hpp"

namespace padyn {

/// Dense univariate polynomial over K, low-to-high, no trailing exact zeros.
class UniPoly {
 public:
  explicit UniPoly(FieldSpec spec) : spec_(spec) {}
  UniPoly(FieldSpec spec, std::vector<PadicElement> coeffs);
  static UniPoly parse(FieldSpec spec, const std::vector<std::string>& literals);

  FieldSpec spec() const { return spec_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<PadicElement>& coeffs() const { return coeffs_; }
  PadicElement coeff(int i) const;
  PadicElement leading() const;

  PadicElement operator()(const PadicElement& x) const;
  UniPoly derivative() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly scaled(const PadicElement& c) const;
  /// Quotient and remainder; the divisor must be nonzero.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
  UniPoly monic() const;

  /// Minimum coefficient valuation (0 for the zero polynomial).
  int content_valuation() const;
  /// Image in (O/p)[X]; requires integral coefficients.
  std::vector<ResidueElement> reduce() const;

  std::string to_string() const;

 private:
  void trim();
  FieldSpec spec_;
  std::vector<PadicElement> coeffs_;
};

/// Monic gcd over K (zero if both inputs are zero).
UniPoly gcd(UniPoly a, UniPoly b);

inline constexpr unsigned kMaxVariables = 8;
using Monomial = std::array<std::uint16_t, kMaxVariables>;

/// Sparse polynomial in r variables over K. Terms are kept sorted by exponent
/// tuple and never carry a zero coefficient.
class MultiPoly {
 public:
  using Term = std::pair<Monomial, PadicElement>;

  MultiPoly(FieldSpec spec, unsigned nvars);
  static MultiPoly constant(FieldSpec spec, unsigned nvars, const PadicElement& c);
  static MultiPoly variable(FieldSpec spec, unsigned nvars, unsigned index);
  static MultiPoly from_terms(FieldSpec spec, unsigned nvars, std::vector<Term> terms);

  FieldSpec spec() const { return spec_; }
  unsigned nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(unsigned var) const;
  /// Smallest variable index that occurs; nvars() when constant.
  unsigned first_variable() const;
  PadicElement coefficient(const Monomial& m) const;

  PadicElement operator()(std::span<const PadicElement> point) const;
  MultiPoly derivative(unsigned var) const;
  MultiPoly homogeneous_part(int degree) const;
  /// Substitute images[i] for variable i (all images share a variable count).
  MultiPoly substitute(std::span<const MultiPoly> images) const;

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scaled(const PadicElement& c) const;
  MultiPoly pow(unsigned e) const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  bool is_integral() const;
  std::string to_string() const;

 private:
  FieldSpec spec_;
  unsigned nvars_;
  std::vector<Term> terms_;
};

/// p(G) for a univariate p, by Horner's rule.
MultiPoly compose(const UniPoly& p, const MultiPoly& g);

}  // namespace padyn
