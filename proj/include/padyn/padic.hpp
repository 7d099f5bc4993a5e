#pragma once

#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "padyn/field.hpp"

namespace padyn {

/// Element of K in floating-valuation form p^val * unit.
///
/// The unit is known modulo p^relprec (relprec <= N) and reduces to a nonzero
/// residue. Zero is a separate flag. Literal zeros are exact; a result whose
/// known digits all cancel is a zero known only modulo p^k, and that bound
/// keeps propagating. Equality compares at the smaller of the two absolute
/// precisions.
class PadicElement {
 public:
  PadicElement() = default;

  static PadicElement zero(FieldSpec spec);
  static PadicElement one(FieldSpec spec);
  static PadicElement from_int(FieldSpec spec, std::int64_t v);
  static PadicElement from_rational(FieldSpec spec, std::int64_t num, std::int64_t den);
  /// Element sum_i c_i t^i with integer coefficients (exact, relprec N).
  static PadicElement from_coeffs(FieldSpec spec, const Coeffs& c);
  /// Canonical lift of a residue: coefficients in [0, p).
  static PadicElement from_residue(const ResidueElement& r);
  /// p^val * unit where unit is known modulo p^relprec; normalizes.
  static PadicElement from_parts(FieldSpec spec, int val, const Coeffs& unit, int relprec);
  /// Parses an integer, a fraction "a/b", a digit list "[c0,c1,...]@p^v",
  /// or for f > 1 a component tuple "{e0,...,e_{f-1}}".
  static PadicElement parse(FieldSpec spec, std::string_view literal);

  std::string to_string() const;

  FieldSpec spec() const;
  const FieldData* field() const { return field_; }
  bool is_zero() const { return zero_; }
  /// Exact zero, as opposed to a zero known modulo some p^k.
  bool is_exact_zero() const { return zero_ && zero_abs_ == kExact; }
  /// nullopt encodes +infinity (any zero).
  std::optional<int> valuation() const;
  int relative_precision() const { return relprec_; }
  /// val + relprec; k for a zero known modulo p^k; a large sentinel for exact zero.
  int absolute_precision() const;
  const Coeffs& unit() const { return unit_; }

  bool is_integral() const { return zero_ ? zero_abs_ >= 0 : val_ >= 0; }
  bool is_unit() const { return !zero_ && val_ == 0; }

  /// Image in O/p^level; requires is_integral().
  Coeffs reduce(unsigned level) const;
  /// The same element viewed in the coarser field spec (N' <= N).
  PadicElement truncate(FieldSpec coarser) const;
  /// This element plus O(p^k).
  PadicElement add_big_oh(int k) const;

  PadicElement operator-() const;
  PadicElement& operator+=(const PadicElement& o);
  PadicElement& operator-=(const PadicElement& o);
  PadicElement& operator*=(const PadicElement& o);
  PadicElement& operator/=(const PadicElement& o);
  friend PadicElement operator+(PadicElement a, const PadicElement& b) { return a += b; }
  friend PadicElement operator-(PadicElement a, const PadicElement& b) { return a -= b; }
  friend PadicElement operator*(PadicElement a, const PadicElement& b) { return a *= b; }
  friend PadicElement operator/(PadicElement a, const PadicElement& b) { return a /= b; }
  friend bool operator==(const PadicElement& a, const PadicElement& b);

  PadicElement pow(std::int64_t e) const;
  PadicElement inverse() const;

 private:
  static constexpr int kExact = INT_MAX / 4;
  static PadicElement inexact_zero(FieldSpec spec, int abs);
  void require_same_field(const PadicElement& o) const;

  const FieldData* field_ = nullptr;
  bool zero_ = true;
  int val_ = 0;
  int relprec_ = 0;
  int zero_abs_ = kExact;
  Coeffs unit_{};
};

/// Image of x in the residue field; NegativeValuation if v(x) < 0.
ResidueElement reduce_to_residue(const PadicElement& x);

/// Unique root of unity congruent to r (order dividing q - 1).
PadicElement teichmueller(const ResidueElement& r);

/// Exact multiplicative order when x equals a root of unity at its working
/// precision; nullopt otherwise. NotAUnit unless v(x) = 0.
std::optional<std::uint64_t> root_of_unity_order(const PadicElement& x);

/// a/b with |a|, b <= sqrt(p^A / 2) congruent to x, for f = 1 only.
std::optional<std::pair<std::int64_t, std::int64_t>> rational_reconstruct(const PadicElement& x);

}  // namespace padyn
