#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace padyn {

inline constexpr unsigned kMaxExtensionDegree = 8;

// Coefficient vector of an element of (Z/p^k)[t]/(h); only the first f entries are used.
using Coeffs = std::array<std::uint64_t, kMaxExtensionDegree>;

namespace modular {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;
  return s >= m ? s - m : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}
std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
// Inverse of a modulo m; requires gcd(a, m) = 1.
std::uint64_t inverse(std::uint64_t a, std::uint64_t m);
// Reduce a signed integer into [0, m).
std::uint64_t reduce_signed(std::int64_t a, std::uint64_t m);
bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace modular

struct FieldData;
class PadicElement;

/// Handle to an interned, immutable description of K: an unramified extension of
/// degree f of Q_p, worked at N p-adic digits, with defining polynomial h.
///
/// Two handles compare equal iff they describe the same (p, f, N, h).
class FieldSpec {
 public:
  /// `modulus` is h, low-to-high with the leading 1 included; empty picks a default.
  static FieldSpec create(std::uint64_t p, unsigned precision, unsigned degree = 1,
                          std::vector<std::uint64_t> modulus = {});

  std::uint64_t prime() const;
  unsigned degree() const;
  unsigned precision() const;
  const std::vector<std::uint64_t>& modulus() const;
  /// p^k for 0 <= k <= precision.
  std::uint64_t prime_power(unsigned k) const;
  /// Residue field cardinality q = p^f (saturates at UINT64_MAX).
  std::uint64_t residue_cardinality() const;
  /// Order of the root-of-unity group: q - 1, doubled for p = 2.
  std::uint64_t roots_of_unity_order() const;

  FieldSpec with_precision(unsigned precision) const;

  const FieldData* data() const { return data_; }
  friend bool operator==(FieldSpec a, FieldSpec b) { return a.data_ == b.data_; }

  std::string to_string() const;

 private:
  friend class PadicElement;
  explicit FieldSpec(const FieldData* d) : data_(d) {}
  const FieldData* data_;
};

/// Default defining polynomial of degree f over F_p: a Conway polynomial from a
/// small table, or the lexicographically first monic irreducible otherwise.
std::vector<std::uint64_t> default_modulus(std::uint64_t p, unsigned degree);
bool is_irreducible_mod_p(const std::vector<std::uint64_t>& h, std::uint64_t p);

/// Arithmetic in O/p^k = (Z/p^k)[t]/(h).
class ResidueRing {
 public:
  ResidueRing(FieldSpec spec, unsigned level);

  FieldSpec spec() const { return spec_; }
  unsigned level() const { return level_; }
  std::uint64_t modulus() const { return modulus_; }
  unsigned degree() const { return degree_; }
  /// Number of elements, p^(f k).
  std::uint64_t size() const;

  Coeffs zero() const { return Coeffs{}; }
  Coeffs one() const;
  Coeffs from_int(std::int64_t v) const;

  Coeffs add(const Coeffs& a, const Coeffs& b) const;
  Coeffs sub(const Coeffs& a, const Coeffs& b) const;
  Coeffs neg(const Coeffs& a) const;
  Coeffs mul(const Coeffs& a, const Coeffs& b) const;
  Coeffs scale(const Coeffs& a, std::uint64_t s) const;
  Coeffs pow(Coeffs a, std::uint64_t e) const;
  /// Inverse of a unit; throws NotAUnit otherwise.
  Coeffs inv(const Coeffs& a) const;

  bool is_zero(const Coeffs& a) const;
  bool is_unit(const Coeffs& a) const;
  bool equal(const Coeffs& a, const Coeffs& b) const;

  /// Bijection between elements and [0, size()).
  std::uint64_t index(const Coeffs& a) const;
  Coeffs from_index(std::uint64_t i) const;
  /// Reduction to a lower level.
  Coeffs truncate(const Coeffs& a, unsigned level) const;

 private:
  FieldSpec spec_;
  unsigned level_;
  unsigned degree_;
  std::uint64_t modulus_;
};

/// Element of the residue field F_q: canonical coefficients in [0, p).
struct ResidueElement {
  FieldSpec spec;
  Coeffs coeffs{};

  static ResidueElement from_int(FieldSpec spec, std::int64_t v);
  bool is_zero() const;
  std::string to_string() const;
  friend bool operator==(const ResidueElement& a, const ResidueElement& b) {
    return a.spec == b.spec && a.coeffs == b.coeffs;
  }
};

/// Multiplicative order of a nonzero residue in F_q^x.
std::uint64_t multiplicative_order(const ResidueElement& r);

}  // namespace padyn
