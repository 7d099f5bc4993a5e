#include "padyn/field.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "padyn/error.hpp"
#include "field_data.hpp"

namespace padyn {

namespace modular {

std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul(result, base, m);
    base = mul(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    std::tie(t, new_t) = std::make_tuple(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_tuple(new_r, r - q * new_r);
  }
  if (r != 1) fail(ErrorKind::NotAUnit, "element is not invertible modulo " + std::to_string(m));
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce_signed(std::int64_t a, std::uint64_t m) {
  __int128 r = static_cast<__int128>(a) % static_cast<__int128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit integers.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto step = [&](std::uint64_t v) { return add(mul(v, v, n), c, n); };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  for (std::uint64_t sp = 2; sp < 1000 && sp * sp <= n; ++sp) {
    if (n % sp == 0) {
      out.push_back(sp);
      while (n % sp == 0) n /= sp;
    }
  }
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  factor_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace modular

namespace {

// Dense polynomials over F_p, low-to-high, trimmed.
using Fp = std::vector<std::uint64_t>;

void trim(Fp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Fp fp_mod(Fp a, const Fp& b, std::uint64_t p) {
  trim(a);
  std::uint64_t lead_inv = modular::inverse(b.back(), p);
  while (a.size() >= b.size()) {
    std::uint64_t t = modular::mul(a.back(), lead_inv, p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      a[shift + j] = modular::sub(a[shift + j], modular::mul(t, b[j], p), p);
    }
    trim(a);
  }
  return a;
}

Fp fp_mulmod(const Fp& a, const Fp& b, const Fp& h, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Fp c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] = modular::add(c[i + j], modular::mul(a[i], b[j], p), p);
    }
  }
  return fp_mod(std::move(c), h, p);
}

Fp fp_powmod(Fp base, std::uint64_t e, const Fp& h, std::uint64_t p) {
  Fp result{1};
  base = fp_mod(std::move(base), h, p);
  while (e > 0) {
    if (e & 1) result = fp_mulmod(result, base, h, p);
    base = fp_mulmod(base, base, h, p);
    e >>= 1;
  }
  return result;
}

Fp fp_gcd(Fp a, Fp b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Fp r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod h.
Fp frobenius_power(const Fp& h, std::uint64_t p, unsigned k) {
  Fp g{0, 1};
  for (unsigned i = 0; i < k; ++i) g = fp_powmod(g, p, h, p);
  return fp_mod(g, h, p);
}

const std::map<std::pair<std::uint64_t, unsigned>, std::vector<std::uint64_t>>& conway_table() {
  static const std::map<std::pair<std::uint64_t, unsigned>, std::vector<std::uint64_t>> table = {
      {{2, 2}, {1, 1, 1}},    {{2, 3}, {1, 1, 0, 1}}, {{2, 4}, {1, 1, 0, 0, 1}},
      {{3, 2}, {2, 2, 1}},    {{3, 3}, {1, 2, 0, 1}}, {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}}, {{7, 2}, {3, 6, 1}},
  };
  return table;
}

std::uint64_t checked_power(std::uint64_t p, unsigned e, std::uint64_t limit) {
  unsigned __int128 v = 1;
  for (unsigned i = 0; i < e; ++i) {
    v *= p;
    if (v > limit) return 0;
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<std::uint64_t>& h_in, std::uint64_t p) {
  Fp h = h_in;
  for (auto& c : h) c %= p;
  trim(h);
  if (h.size() < 2) return false;
  unsigned f = static_cast<unsigned>(h.size() - 1);
  if (f == 1) return true;
  Fp x{0, 1};
  if (fp_mod(frobenius_power(h, p, f), h, p) != fp_mod(x, h, p)) return false;
  for (std::uint64_t r : modular::prime_factors(f)) {
    Fp g = frobenius_power(h, p, static_cast<unsigned>(f / r));
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = modular::sub(g[1], 1, p);
    trim(g);
    if (fp_gcd(g, h, p).size() != 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> default_modulus(std::uint64_t p, unsigned degree) {
  if (degree == 1) return {0, 1};
  auto it = conway_table().find({p, degree});
  if (it != conway_table().end()) return it->second;
  // Enumerate monic candidates in lexicographic order of (c0, c1, ...).
  std::vector<std::uint64_t> h(degree + 1, 0);
  h[degree] = 1;
  for (;;) {
    if (is_irreducible_mod_p(h, p)) return h;
    std::size_t i = 0;
    while (i < degree) {
      if (++h[i] < p) break;
      h[i++] = 0;
    }
    if (i == degree) fail(ErrorKind::InvalidArgument, "no irreducible polynomial found");
  }
}

FieldSpec FieldSpec::create(std::uint64_t p, unsigned precision, unsigned degree,
                            std::vector<std::uint64_t> modulus) {
  if (!modular::is_prime(p)) fail(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  if (precision < 1) fail(ErrorKind::InvalidArgument, "precision must be at least 1");
  if (degree < 1 || degree > kMaxExtensionDegree) {
    fail(ErrorKind::InvalidArgument, "extension degree must lie in [1, " +
                                         std::to_string(kMaxExtensionDegree) + "]");
  }
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  if (checked_power(p, precision, kLimit) == 0) {
    fail(ErrorKind::InvalidArgument, "p^N must not exceed 2^62");
  }
  std::uint64_t q = checked_power(p, degree, kLimit);
  if (q == 0) fail(ErrorKind::InvalidArgument, "p^f must not exceed 2^62");
  if (modulus.empty()) modulus = default_modulus(p, degree);
  for (auto& c : modulus) c %= p;
  if (modulus.size() != degree + 1 || modulus.back() != 1) {
    fail(ErrorKind::InvalidArgument, "defining polynomial must be monic of degree f");
  }
  if (!is_irreducible_mod_p(modulus, p)) {
    fail(ErrorKind::InvalidArgument, "defining polynomial is reducible modulo p");
  }

  static std::mutex mutex;
  static std::map<std::tuple<std::uint64_t, unsigned, unsigned, std::vector<std::uint64_t>>,
                  std::unique_ptr<FieldData>>
      registry;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(p, degree, precision, modulus);
  auto it = registry.find(key);
  if (it == registry.end()) {
    auto d = std::make_unique<FieldData>();
    d->p = p;
    d->f = degree;
    d->N = precision;
    d->h = modulus;
    d->q = q;
    d->powers.resize(precision + 1);
    d->powers[0] = 1;
    for (unsigned i = 1; i <= precision; ++i) d->powers[i] = d->powers[i - 1] * p;
    it = registry.emplace(key, std::move(d)).first;
  }
  return FieldSpec(it->second.get());
}

std::uint64_t FieldSpec::prime() const { return data_->p; }
unsigned FieldSpec::degree() const { return data_->f; }
unsigned FieldSpec::precision() const { return data_->N; }
const std::vector<std::uint64_t>& FieldSpec::modulus() const { return data_->h; }
std::uint64_t FieldSpec::prime_power(unsigned k) const { return data_->powers.at(k); }
std::uint64_t FieldSpec::residue_cardinality() const { return data_->q; }
std::uint64_t FieldSpec::roots_of_unity_order() const {
  return data_->p == 2 ? 2 * (data_->q - 1) : data_->q - 1;
}

FieldSpec FieldSpec::with_precision(unsigned precision) const {
  return create(data_->p, precision, data_->f, data_->h);
}

std::string FieldSpec::to_string() const {
  std::ostringstream os;
  os << "Q_" << data_->p;
  if (data_->f > 1) os << "(f=" << data_->f << ")";
  os << " @ N=" << data_->N;
  return os.str();
}

ResidueRing::ResidueRing(FieldSpec spec, unsigned level)
    : spec_(spec), level_(level), degree_(spec.degree()) {
  if (level < 1 || level > spec.precision()) {
    fail(ErrorKind::InvalidArgument, "residue level must lie in [1, N]");
  }
  modulus_ = spec.prime_power(level);
}

std::uint64_t ResidueRing::size() const {
  unsigned __int128 v = 1;
  for (unsigned i = 0; i < degree_; ++i) {
    v *= modulus_;
    if (v > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(v);
}

Coeffs ResidueRing::one() const {
  Coeffs c{};
  c[0] = 1 % modulus_;
  return c;
}

Coeffs ResidueRing::from_int(std::int64_t v) const {
  Coeffs c{};
  c[0] = modular::reduce_signed(v, modulus_);
  return c;
}

Coeffs ResidueRing::add(const Coeffs& a, const Coeffs& b) const {
  Coeffs c{};
  for (unsigned i = 0; i < degree_; ++i) c[i] = modular::add(a[i], b[i], modulus_);
  return c;
}

Coeffs ResidueRing::sub(const Coeffs& a, const Coeffs& b) const {
  Coeffs c{};
  for (unsigned i = 0; i < degree_; ++i) c[i] = modular::sub(a[i], b[i], modulus_);
  return c;
}

Coeffs ResidueRing::neg(const Coeffs& a) const { return sub(zero(), a); }

Coeffs ResidueRing::mul(const Coeffs& a, const Coeffs& b) const {
  if (degree_ == 1) {
    Coeffs c{};
    c[0] = modular::mul(a[0], b[0], modulus_);
    return c;
  }
  std::array<std::uint64_t, 2 * kMaxExtensionDegree> t{};
  for (unsigned i = 0; i < degree_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < degree_; ++j) {
      t[i + j] = modular::add(t[i + j], modular::mul(a[i], b[j], modulus_), modulus_);
    }
  }
  const auto& h = spec_.modulus();
  for (unsigned i = 2 * degree_ - 2; i >= degree_; --i) {
    std::uint64_t lead = t[i];
    if (lead == 0) continue;
    t[i] = 0;
    for (unsigned j = 0; j < degree_; ++j) {
      t[i - degree_ + j] =
          modular::sub(t[i - degree_ + j], modular::mul(lead, h[j], modulus_), modulus_);
    }
  }
  Coeffs c{};
  for (unsigned i = 0; i < degree_; ++i) c[i] = t[i];
  return c;
}

Coeffs ResidueRing::scale(const Coeffs& a, std::uint64_t s) const {
  Coeffs c{};
  s %= modulus_;
  for (unsigned i = 0; i < degree_; ++i) c[i] = modular::mul(a[i], s, modulus_);
  return c;
}

Coeffs ResidueRing::pow(Coeffs a, std::uint64_t e) const {
  Coeffs r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Coeffs ResidueRing::inv(const Coeffs& a) const {
  if (!is_unit(a)) fail(ErrorKind::NotAUnit, "element is not a unit of O/p^k");
  std::uint64_t p = spec_.prime();
  Coeffs v{};
  if (degree_ == 1) {
    v[0] = modular::inverse(a[0] % p, p);
  } else {
    ResidueRing field(spec_, 1);
    v = field.pow(truncate(a, 1), spec_.residue_cardinality() - 2);
  }
  // Newton: v <- v (2 - a v) doubles the number of correct digits.
  Coeffs two = from_int(2);
  for (unsigned correct = 1; correct < level_; correct *= 2) {
    v = mul(v, sub(two, mul(a, v)));
  }
  return v;
}

bool ResidueRing::is_zero(const Coeffs& a) const {
  for (unsigned i = 0; i < degree_; ++i) {
    if (a[i] % modulus_ != 0) return false;
  }
  return true;
}

bool ResidueRing::is_unit(const Coeffs& a) const {
  std::uint64_t p = spec_.prime();
  for (unsigned i = 0; i < degree_; ++i) {
    if (a[i] % p != 0) return true;
  }
  return false;
}

bool ResidueRing::equal(const Coeffs& a, const Coeffs& b) const {
  for (unsigned i = 0; i < degree_; ++i) {
    if (a[i] % modulus_ != b[i] % modulus_) return false;
  }
  return true;
}

std::uint64_t ResidueRing::index(const Coeffs& a) const {
  std::uint64_t idx = 0;
  for (unsigned i = degree_; i-- > 0;) idx = idx * modulus_ + a[i];
  return idx;
}

Coeffs ResidueRing::from_index(std::uint64_t i) const {
  Coeffs c{};
  for (unsigned j = 0; j < degree_; ++j) {
    c[j] = i % modulus_;
    i /= modulus_;
  }
  return c;
}

Coeffs ResidueRing::truncate(const Coeffs& a, unsigned level) const {
  std::uint64_t m = spec_.prime_power(level);
  Coeffs c{};
  for (unsigned i = 0; i < degree_; ++i) c[i] = a[i] % m;
  return c;
}

ResidueElement ResidueElement::from_int(FieldSpec spec, std::int64_t v) {
  return ResidueElement{spec, ResidueRing(spec, 1).from_int(v)};
}

bool ResidueElement::is_zero() const {
  for (unsigned i = 0; i < spec.degree(); ++i) {
    if (coeffs[i] != 0) return false;
  }
  return true;
}

std::string ResidueElement::to_string() const {
  if (spec.degree() == 1) return std::to_string(coeffs[0]);
  std::string s = "{";
  for (unsigned i = 0; i < spec.degree(); ++i) {
    if (i) s += ",";
    s += std::to_string(coeffs[i]);
  }
  return s + "}";
}

std::uint64_t multiplicative_order(const ResidueElement& r) {
  if (r.is_zero()) fail(ErrorKind::ZeroResidue, "zero has no multiplicative order");
  ResidueRing field(r.spec, 1);
  std::uint64_t order = r.spec.residue_cardinality() - 1;
  for (std::uint64_t ell : modular::prime_factors(order)) {
    while (order % ell == 0 && field.equal(field.pow(r.coeffs, order / ell), field.one())) {
      order /= ell;
    }
  }
  return order;
}

}  // namespace padyn
