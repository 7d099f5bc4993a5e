#include "padyn/padic.hpp"

#include <algorithm>
#include <charconv>
#include <climits>
#include <cmath>
#include <numeric>
#include <vector>

#include "field_data.hpp"
#include "padyn/error.hpp"

namespace padyn {

namespace {

unsigned vp(std::uint64_t c, std::uint64_t p) {
  unsigned t = 0;
  while (c != 0 && c % p == 0) {
    c /= p;
    ++t;
  }
  return t;
}

// p^e when it fits below 2^62, otherwise 0.
std::uint64_t small_power(std::uint64_t p, int e) {
  unsigned __int128 v = 1;
  for (int i = 0; i < e; ++i) {
    v *= p;
    if (v > (static_cast<unsigned __int128>(1) << 62)) return 0;
  }
  return static_cast<std::uint64_t>(v);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorKind::ParseError, "bad integer in scalar literal '" + std::string(whole) + "'");
  }
  return v;
}

std::vector<std::string_view> split_top_level(std::string_view s) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[' || s[i] == '{') ++depth;
    if (s[i] == ']' || s[i] == '}') --depth;
    if (s[i] == ',' && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

// A Q_p scalar given by valuation and an integer unit part known mod p^R.
struct BaseScalar {
  bool zero = true;
  int val = 0;
  std::uint64_t unit = 0;
  int relprec = 0;
};

BaseScalar parse_base(FieldSpec spec, std::string_view lit) {
  const std::uint64_t p = spec.prime();
  const int N = static_cast<int>(spec.precision());
  const std::uint64_t mod = spec.prime_power(N);
  lit = trim(lit);
  if (lit.empty()) fail(ErrorKind::ParseError, "empty scalar literal");
  BaseScalar out;
  if (lit.front() == '[') {
    auto close = lit.find(']');
    if (close == std::string_view::npos) fail(ErrorKind::ParseError, "unterminated digit list");
    int v = 0;
    std::string_view rest = trim(lit.substr(close + 1));
    if (!rest.empty()) {
      if (rest.substr(0, 3) != "@p^") {
        fail(ErrorKind::ParseError, "digit list suffix must be '@p^v' in '" + std::string(lit) + "'");
      }
      v = static_cast<int>(parse_int(rest.substr(3), lit));
    }
    std::uint64_t u = 0;
    std::uint64_t place = 1;
    int count = 0;
    for (auto d : split_top_level(lit.substr(1, close - 1))) {
      std::int64_t digit = parse_int(d, lit);
      if (digit < 0 || static_cast<std::uint64_t>(digit) >= p) {
        fail(ErrorKind::ParseError, "digit out of range in '" + std::string(lit) + "'");
      }
      if (count < N) {
        u = modular::add(u, modular::mul(static_cast<std::uint64_t>(digit), place, mod), mod);
        place = modular::mul(place, p, mod);
      }
      ++count;
    }
    if (u == 0) return out;
    unsigned t = vp(u, p);
    out.zero = false;
    out.val = v + static_cast<int>(t);
    out.unit = u / spec.prime_power(t);
    out.relprec = N;
    return out;
  }
  auto make_int = [&](std::int64_t n) {
    BaseScalar b;
    if (n == 0) return b;
    std::uint64_t mag = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    unsigned t = vp(mag, p);
    for (unsigned i = 0; i < t; ++i) mag /= p;
    b.zero = false;
    b.val = static_cast<int>(t);
    b.unit = mag % mod;
    if (n < 0) b.unit = modular::sub(0, b.unit, mod);
    b.relprec = N;
    return b;
  };
  auto slash = lit.find('/');
  if (slash == std::string_view::npos) return make_int(parse_int(lit, lit));
  std::int64_t num = parse_int(lit.substr(0, slash), lit);
  std::int64_t den = parse_int(lit.substr(slash + 1), lit);
  if (den == 0) fail(ErrorKind::ParseError, "zero denominator in '" + std::string(lit) + "'");
  BaseScalar a = make_int(num);
  BaseScalar b = make_int(den);
  if (a.zero) return a;
  a.val -= b.val;
  a.unit = modular::mul(a.unit, modular::inverse(b.unit, mod), mod);
  return a;
}

std::string format_base(std::uint64_t p, int val, std::uint64_t unit, int relprec) {
  std::uint64_t modulus = val >= 0 ? small_power(p, val + relprec) : 0;
  if (modulus != 0) {
    std::uint64_t n = unit * small_power(p, val);
    if (n > modulus / 2) return "-" + std::to_string(modulus - n);
    return std::to_string(n);
  }
  std::vector<std::uint64_t> digits;
  for (int i = 0; i < relprec; ++i) {
    digits.push_back(unit % p);
    unit /= p;
  }
  while (digits.size() > 1 && digits.back() == 0) digits.pop_back();
  std::string s = "[";
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(digits[i]);
  }
  return s + "]@p^" + std::to_string(val);
}

}  // namespace

FieldSpec PadicElement::spec() const {
  if (field_ == nullptr) fail(ErrorKind::InvalidArgument, "uninitialized p-adic element");
  return FieldSpec(field_);
}

PadicElement PadicElement::zero(FieldSpec spec) {
  PadicElement e;
  e.field_ = spec.data();
  return e;
}

PadicElement PadicElement::one(FieldSpec spec) { return from_int(spec, 1); }

PadicElement PadicElement::from_parts(FieldSpec spec, int val, const Coeffs& unit, int relprec) {
  const FieldData& F = *spec.data();
  relprec = std::min<int>(relprec, static_cast<int>(F.N));
  if (relprec <= 0) return inexact_zero(spec, val + relprec);
  PadicElement e = zero(spec);
  const std::uint64_t m = F.powers[relprec];
  Coeffs u{};
  unsigned t = UINT_MAX;
  for (unsigned i = 0; i < F.f; ++i) {
    u[i] = unit[i] % m;
    if (u[i] != 0) t = std::min(t, vp(u[i], F.p));
  }
  if (t == UINT_MAX) return inexact_zero(spec, val + relprec);
  if (t > 0) {
    const std::uint64_t d = F.powers[t];
    for (unsigned i = 0; i < F.f; ++i) u[i] /= d;
  }
  e.zero_ = false;
  e.val_ = val + static_cast<int>(t);
  e.relprec_ = relprec - static_cast<int>(t);
  e.unit_ = u;
  return e;
}

PadicElement PadicElement::from_int(FieldSpec spec, std::int64_t v) {
  BaseScalar b = parse_base(spec, std::to_string(v));
  if (b.zero) return zero(spec);
  Coeffs u{};
  u[0] = b.unit;
  return from_parts(spec, b.val, u, b.relprec);
}

PadicElement PadicElement::from_rational(FieldSpec spec, std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorKind::DivisionByZero, "rational with zero denominator");
  return from_int(spec, num) / from_int(spec, den);
}

PadicElement PadicElement::from_coeffs(FieldSpec spec, const Coeffs& c) {
  const FieldData& F = *spec.data();
  unsigned t = UINT_MAX;
  for (unsigned i = 0; i < F.f; ++i) {
    if (c[i] != 0) t = std::min(t, vp(c[i], F.p));
  }
  if (t == UINT_MAX) return zero(spec);
  Coeffs u{};
  std::uint64_t d = 1;
  for (unsigned i = 0; i < t; ++i) d *= F.p;
  for (unsigned i = 0; i < F.f; ++i) u[i] = (c[i] / d) % F.powers[F.N];
  return from_parts(spec, static_cast<int>(t), u, static_cast<int>(F.N));
}

PadicElement PadicElement::from_residue(const ResidueElement& r) { return from_coeffs(r.spec, r.coeffs); }

PadicElement PadicElement::parse(FieldSpec spec, std::string_view literal) {
  std::string_view lit = trim(literal);
  const FieldData& F = *spec.data();
  if (!lit.empty() && lit.front() == '{') {
    if (lit.back() != '}') fail(ErrorKind::ParseError, "unterminated component tuple");
    auto parts = split_top_level(lit.substr(1, lit.size() - 2));
    if (parts.size() != F.f) {
      fail(ErrorKind::ParseError, "component tuple needs exactly f entries in '" + std::string(lit) + "'");
    }
    PadicElement sum = zero(spec);
    for (unsigned i = 0; i < F.f; ++i) {
      BaseScalar b = parse_base(spec, parts[i]);
      if (b.zero) continue;
      Coeffs u{};
      u[i] = b.unit;
      sum += from_parts(spec, b.val, u, b.relprec);
    }
    return sum;
  }
  BaseScalar b = parse_base(spec, lit);
  if (b.zero) return zero(spec);
  Coeffs u{};
  u[0] = b.unit;
  return from_parts(spec, b.val, u, b.relprec);
}

std::string PadicElement::to_string() const {
  if (field_ == nullptr) return "<null>";
  if (zero_) return "0";
  const FieldData& F = *field_;
  if (F.f == 1) return format_base(F.p, val_, unit_[0], relprec_);
  std::string s = "{";
  for (unsigned i = 0; i < F.f; ++i) {
    if (i) s += ",";
    if (unit_[i] == 0) {
      s += "0";
      continue;
    }
    unsigned t = vp(unit_[i], F.p);
    s += format_base(F.p, val_ + static_cast<int>(t), unit_[i] / F.powers[t], relprec_ - static_cast<int>(t));
  }
  return s + "}";
}

std::optional<int> PadicElement::valuation() const {
  if (zero_) return std::nullopt;
  return val_;
}

int PadicElement::absolute_precision() const { return zero_ ? zero_abs_ : val_ + relprec_; }

PadicElement PadicElement::inexact_zero(FieldSpec spec, int abs) {
  PadicElement e = zero(spec);
  e.zero_abs_ = std::min(abs, kExact - 1);
  return e;
}

Coeffs PadicElement::reduce(unsigned level) const {
  if (!is_integral()) fail(ErrorKind::NegativeValuation, "cannot reduce a non-integral element");
  Coeffs c{};
  if (absolute_precision() < static_cast<int>(level)) {
    fail(ErrorKind::InvalidArgument, "element is not known modulo p^" + std::to_string(level));
  }
  if (zero_ || val_ >= static_cast<int>(level)) return c;
  const FieldData& F = *field_;
  const std::uint64_t m = F.powers[level];
  const std::uint64_t scale = F.powers[val_];
  for (unsigned i = 0; i < F.f; ++i) c[i] = modular::mul(unit_[i] % m, scale, m);
  return c;
}

PadicElement PadicElement::add_big_oh(int k) const { return *this + inexact_zero(spec(), k); }

PadicElement PadicElement::truncate(FieldSpec coarser) const {
  const FieldData& C = *coarser.data();
  const FieldData& F = *spec().data();
  if (C.p != F.p || C.f != F.f || C.h != F.h || C.N > F.N) {
    fail(ErrorKind::SpecMismatch, "truncation target must be the same field at lower precision");
  }
  if (is_exact_zero()) return zero(coarser);
  if (zero_) return inexact_zero(coarser, zero_abs_);
  return from_parts(coarser, val_, unit_, std::min<int>(relprec_, static_cast<int>(C.N)));
}

void PadicElement::require_same_field(const PadicElement& o) const {
  if (field_ == nullptr || o.field_ == nullptr) {
    fail(ErrorKind::InvalidArgument, "uninitialized p-adic element");
  }
  if (field_ != o.field_) fail(ErrorKind::SpecMismatch, "operands live in different fields");
}

PadicElement PadicElement::operator-() const {
  if (zero_) return *this;
  ResidueRing ring(spec(), static_cast<unsigned>(relprec_));
  PadicElement e = *this;
  e.unit_ = ring.neg(unit_);
  return e;
}

PadicElement& PadicElement::operator+=(const PadicElement& o) {
  require_same_field(o);
  if (o.is_exact_zero()) return *this;
  if (is_exact_zero()) return *this = o;
  if (zero_ || o.zero_) {
    const int abs = std::min(absolute_precision(), o.absolute_precision());
    const PadicElement& other = zero_ ? o : *this;
    if (other.zero_ || other.val_ >= abs) return *this = inexact_zero(spec(), abs);
    return *this = from_parts(spec(), other.val_, other.unit_, abs - other.val_);
  }
  const FieldData& F = *field_;
  const PadicElement& lo = val_ <= o.val_ ? *this : o;
  const PadicElement& hi = val_ <= o.val_ ? o : *this;
  const int abs = std::min(lo.val_ + lo.relprec_, hi.val_ + hi.relprec_);
  const int R = abs - lo.val_;
  const int shift = hi.val_ - lo.val_;
  const std::uint64_t m = F.powers[R];
  Coeffs s{};
  for (unsigned i = 0; i < F.f; ++i) {
    s[i] = lo.unit_[i] % m;
    if (shift < R) {
      s[i] = modular::add(s[i], modular::mul(hi.unit_[i] % m, F.powers[shift], m), m);
    }
  }
  return *this = from_parts(spec(), lo.val_, s, R);
}

PadicElement& PadicElement::operator-=(const PadicElement& o) { return *this += -o; }

PadicElement& PadicElement::operator*=(const PadicElement& o) {
  require_same_field(o);
  if (is_exact_zero()) return *this;
  if (o.is_exact_zero()) return *this = o;
  if (zero_ || o.zero_) {
    const int a = zero_ ? zero_abs_ : val_;
    const int b = o.zero_ ? o.zero_abs_ : o.val_;
    return *this = inexact_zero(spec(), a + b);
  }
  const int R = std::min(relprec_, o.relprec_);
  ResidueRing ring(spec(), static_cast<unsigned>(R));
  unit_ = ring.mul(unit_, o.unit_);
  val_ += o.val_;
  relprec_ = R;
  return *this;
}

PadicElement& PadicElement::operator/=(const PadicElement& o) {
  require_same_field(o);
  if (o.zero_) fail(ErrorKind::DivisionByZero, "division by an element with no certified nonzero digit");
  if (is_exact_zero()) return *this;
  if (zero_) return *this = inexact_zero(spec(), zero_abs_ - o.val_);
  const int R = std::min(relprec_, o.relprec_);
  ResidueRing ring(spec(), static_cast<unsigned>(R));
  unit_ = ring.mul(ring.truncate(unit_, R), ring.inv(ring.truncate(o.unit_, R)));
  val_ -= o.val_;
  relprec_ = R;
  return *this;
}

bool operator==(const PadicElement& a, const PadicElement& b) {
  if (a.field_ != b.field_) return false;
  if (a.zero_ && b.zero_) return true;
  return (a - b).is_zero();
}

PadicElement PadicElement::inverse() const { return one(spec()) / *this; }

PadicElement PadicElement::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  PadicElement result = one(spec());
  PadicElement base = *this;
  auto ue = static_cast<std::uint64_t>(e);
  while (ue > 0) {
    if (ue & 1) result *= base;
    ue >>= 1;
    if (ue) base *= base;
  }
  return result;
}

ResidueElement reduce_to_residue(const PadicElement& x) {
  if (!x.is_integral()) {
    fail(ErrorKind::NegativeValuation, "element " + x.to_string() + " has negative valuation");
  }
  return ResidueElement{x.spec(), x.reduce(1)};
}

PadicElement teichmueller(const ResidueElement& r) {
  if (r.is_zero()) fail(ErrorKind::ZeroResidue, "the Teichmueller lift of 0 is undefined");
  const std::uint64_t q = r.spec.residue_cardinality();
  PadicElement a = PadicElement::from_residue(r);
  // a -> a^q gains one correct digit per step.
  for (unsigned i = 0; i <= r.spec.precision(); ++i) {
    PadicElement next = a.pow(static_cast<std::int64_t>(q));
    if (next == a) return next;
    a = next;
  }
  return a;
}

std::optional<std::uint64_t> root_of_unity_order(const PadicElement& x) {
  if (!x.is_unit()) fail(ErrorKind::NotAUnit, "root_of_unity_order needs a unit, got " + x.to_string());
  ResidueElement r = reduce_to_residue(x);
  PadicElement omega = teichmueller(r);
  std::uint64_t order = multiplicative_order(r);
  if (x == omega) return order;
  if (x.spec().prime() == 2 && x == -omega) return 2 * order;
  return std::nullopt;
}

std::optional<std::pair<std::int64_t, std::int64_t>> rational_reconstruct(const PadicElement& x) {
  FieldSpec spec = x.spec();
  if (spec.degree() != 1) return std::nullopt;
  if (x.is_zero()) return std::make_pair(std::int64_t{0}, std::int64_t{1});
  const std::uint64_t p = spec.prime();
  const int v = *x.valuation();
  const int N = static_cast<int>(spec.precision());
  std::uint64_t M = 0;
  std::uint64_t n = 0;
  if (v >= 0) {
    int A = std::min(v + x.relative_precision(), N);
    if (v >= A) return std::nullopt;
    M = spec.prime_power(A);
    n = modular::mul(x.unit()[0] % M, spec.prime_power(v), M);
  } else {
    M = spec.prime_power(x.relative_precision());
    n = x.unit()[0] % M;
  }
  const auto bound = static_cast<__int128>(std::sqrt(static_cast<long double>(M) / 2.0L));
  __int128 r0 = M, r1 = n, s0 = 0, s1 = 1;
  while (r1 > bound) {
    __int128 q = r0 / r1;
    __int128 r2 = r0 - q * r1;
    __int128 s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  __int128 a = r1, b = s1;
  if (b < 0) {
    a = -a;
    b = -b;
  }
  if (b == 0 || b > bound) return std::nullopt;
  if (std::gcd(static_cast<std::int64_t>(a < 0 ? -a : a), static_cast<std::int64_t>(b)) != 1) {
    return std::nullopt;
  }
  __int128 check = (b % M) * n % M - (a % static_cast<__int128>(M));
  if (check % static_cast<__int128>(M) != 0) return std::nullopt;
  if (v < 0) {
    for (int i = 0; i < -v; ++i) {
      b *= p;
      if (b > (static_cast<__int128>(1) << 62)) return std::nullopt;
    }
  }
  return std::make_pair(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b));
}

}  // namespace padyn
