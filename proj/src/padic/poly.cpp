#include "padyn/poly.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <unordered_map>

#include "padyn/error.hpp"

namespace padyn {

UniPoly::UniPoly(FieldSpec spec, std::vector<PadicElement> coeffs)
    : spec_(spec), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (!(c.spec() == spec_)) fail(ErrorKind::SpecMismatch, "polynomial coefficient from another field");
  }
  trim();
}

UniPoly UniPoly::parse(FieldSpec spec, const std::vector<std::string>& literals) {
  std::vector<PadicElement> c;
  c.reserve(literals.size());
  for (const auto& s : literals) c.push_back(PadicElement::parse(spec, s));
  return UniPoly(spec, std::move(c));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

PadicElement UniPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return PadicElement::zero(spec_);
  return coeffs_[static_cast<std::size_t>(i)];
}

PadicElement UniPoly::leading() const { return coeff(degree()); }

PadicElement UniPoly::operator()(const PadicElement& x) const {
  PadicElement acc = PadicElement::zero(spec_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  std::vector<PadicElement> d;
  for (int i = 1; i <= degree(); ++i) d.push_back(coeffs_[i] * PadicElement::from_int(spec_, i));
  return UniPoly(spec_, std::move(d));
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<PadicElement> c(std::max(coeffs_.size(), o.coeffs_.size()), PadicElement::zero(spec_));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return UniPoly(spec_, std::move(c));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + o.scaled(-PadicElement::one(spec_)); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly(spec_);
  std::vector<PadicElement> c(coeffs_.size() + o.coeffs_.size() - 1, PadicElement::zero(spec_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return UniPoly(spec_, std::move(c));
}

UniPoly UniPoly::scaled(const PadicElement& s) const {
  std::vector<PadicElement> c = coeffs_;
  for (auto& x : c) x *= s;
  return UniPoly(spec_, std::move(c));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
  if (d.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  std::vector<PadicElement> r = coeffs_;
  const int dd = d.degree();
  std::vector<PadicElement> q(std::max(0, degree() - dd + 1), PadicElement::zero(spec_));
  const PadicElement lead = d.leading();
  for (int k = static_cast<int>(r.size()) - 1; k >= dd; --k) {
    if (r[k].is_zero()) continue;
    PadicElement t = r[k] / lead;
    q[k - dd] = t;
    for (int j = 0; j < dd; ++j) r[k - dd + j] -= t * d.coeffs_[j];
    r[k] = PadicElement::zero(spec_);
  }
  r.resize(std::min<std::size_t>(r.size(), static_cast<std::size_t>(dd)), PadicElement::zero(spec_));
  return {UniPoly(spec_, std::move(q)), UniPoly(spec_, std::move(r))};
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inverse());
}

int UniPoly::content_valuation() const {
  int v = INT_MAX;
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) v = std::min(v, *c.valuation());
  }
  return v == INT_MAX ? 0 : v;
}

std::vector<ResidueElement> UniPoly::reduce() const {
  std::vector<ResidueElement> out;
  for (const auto& c : coeffs_) out.push_back(reduce_to_residue(c));
  return out;
}

std::string UniPoly::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? ", " : "") << coeffs_[i].to_string();
  os << "]";
  return os.str();
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto e : m) h = (h ^ e) * 1099511628211ull;
    return h;
  }
};

int degree_of(const Monomial& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

}  // namespace

MultiPoly::MultiPoly(FieldSpec spec, unsigned nvars) : spec_(spec), nvars_(nvars) {
  if (nvars == 0 || nvars > kMaxVariables) {
    fail(ErrorKind::InvalidArgument, "number of variables must lie in [1, " +
                                         std::to_string(kMaxVariables) + "]");
  }
}

MultiPoly MultiPoly::constant(FieldSpec spec, unsigned nvars, const PadicElement& c) {
  MultiPoly m(spec, nvars);
  if (!c.is_zero()) m.terms_.push_back({Monomial{}, c});
  return m;
}

MultiPoly MultiPoly::variable(FieldSpec spec, unsigned nvars, unsigned index) {
  MultiPoly m(spec, nvars);
  if (index >= nvars) fail(ErrorKind::InvalidArgument, "variable index out of range");
  Monomial e{};
  e[index] = 1;
  m.terms_.push_back({e, PadicElement::one(spec)});
  return m;
}

MultiPoly MultiPoly::from_terms(FieldSpec spec, unsigned nvars, std::vector<Term> terms) {
  MultiPoly m(spec, nvars);
  std::unordered_map<Monomial, PadicElement, MonomialHash> acc;
  for (auto& [mono, c] : terms) {
    for (unsigned i = nvars; i < kMaxVariables; ++i) {
      if (mono[i] != 0) fail(ErrorKind::InvalidArgument, "exponent on a nonexistent variable");
    }
    if (!(c.spec() == spec)) fail(ErrorKind::SpecMismatch, "term coefficient from another field");
    auto [it, inserted] = acc.try_emplace(mono, c);
    if (!inserted) it->second += c;
  }
  for (auto& [mono, c] : acc) {
    if (!c.is_zero()) m.terms_.push_back({mono, c});
  }
  std::sort(m.terms_.begin(), m.terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  return m;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, degree_of(t.first));
  return d;
}

int MultiPoly::degree_in(unsigned var) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first[var]));
  return d;
}

unsigned MultiPoly::first_variable() const {
  unsigned first = nvars_;
  for (const auto& t : terms_) {
    for (unsigned i = 0; i < nvars_; ++i) {
      if (t.first[i] != 0) {
        first = std::min(first, i);
        break;
      }
    }
  }
  return first;
}

PadicElement MultiPoly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) return it->second;
  return PadicElement::zero(spec_);
}

PadicElement MultiPoly::operator()(std::span<const PadicElement> point) const {
  if (point.size() != nvars_) fail(ErrorKind::InvalidArgument, "point dimension mismatch");
  std::vector<std::vector<PadicElement>> powers(nvars_);
  for (unsigned i = 0; i < nvars_; ++i) {
    int d = degree_in(i);
    powers[i].push_back(PadicElement::one(spec_));
    for (int k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * point[i]);
  }
  PadicElement acc = PadicElement::zero(spec_);
  for (const auto& [mono, c] : terms_) {
    PadicElement t = c;
    for (unsigned i = 0; i < nvars_; ++i) {
      if (mono[i]) t *= powers[i][mono[i]];
    }
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::derivative(unsigned var) const {
  std::vector<Term> out;
  for (const auto& [mono, c] : terms_) {
    if (mono[var] == 0) continue;
    Monomial m = mono;
    --m[var];
    out.push_back({m, c * PadicElement::from_int(spec_, mono[var])});
  }
  return from_terms(spec_, nvars_, std::move(out));
}

MultiPoly MultiPoly::homogeneous_part(int degree) const {
  MultiPoly m(spec_, nvars_);
  for (const auto& t : terms_) {
    if (degree_of(t.first) == degree) m.terms_.push_back(t);
  }
  return m;
}

MultiPoly MultiPoly::substitute(std::span<const MultiPoly> images) const {
  if (images.size() != nvars_) fail(ErrorKind::InvalidArgument, "substitution arity mismatch");
  const unsigned target = images.front().nvars();
  std::vector<std::vector<MultiPoly>> powers(nvars_);
  for (unsigned i = 0; i < nvars_; ++i) {
    powers[i].push_back(constant(spec_, target, PadicElement::one(spec_)));
    for (int k = 1; k <= degree_in(i); ++k) powers[i].push_back(powers[i].back() * images[i]);
  }
  MultiPoly acc(spec_, target);
  for (const auto& [mono, c] : terms_) {
    MultiPoly t = constant(spec_, target, c);
    for (unsigned i = 0; i < nvars_; ++i) {
      if (mono[i]) t = t * powers[i][mono[i]];
    }
    acc = acc + t;
  }
  return acc;
}

MultiPoly MultiPoly::operator-() const { return scaled(-PadicElement::one(spec_)); }

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) fail(ErrorKind::InvalidArgument, "variable count mismatch");
  MultiPoly m(spec_, nvars_);
  m.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      m.terms_.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      m.terms_.push_back(*b++);
    } else {
      PadicElement s = a->second + b->second;
      if (!s.is_zero()) m.terms_.push_back({a->first, s});
      ++a;
      ++b;
    }
  }
  return m;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) fail(ErrorKind::InvalidArgument, "variable count mismatch");
  if (is_zero() || o.is_zero()) return MultiPoly(spec_, nvars_);
  std::unordered_map<Monomial, PadicElement, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size() / 2 + 1);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m{};
      for (unsigned i = 0; i < nvars_; ++i) {
        unsigned e = static_cast<unsigned>(ma[i]) + mb[i];
        if (e > 0xFFFF) fail(ErrorKind::DegreeOverflow, "exponent exceeds 65535");
        m[i] = static_cast<std::uint16_t>(e);
      }
      auto [it, inserted] = acc.try_emplace(m, ca);
      if (inserted) {
        it->second *= cb;
      } else {
        it->second += ca * cb;
      }
    }
  }
  MultiPoly out(spec_, nvars_);
  out.terms_.reserve(acc.size());
  for (auto& [mono, c] : acc) {
    if (!c.is_zero()) out.terms_.push_back({mono, c});
  }
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  return out;
}

MultiPoly MultiPoly::scaled(const PadicElement& c) const {
  MultiPoly m(spec_, nvars_);
  if (c.is_zero()) return m;
  for (const auto& [mono, v] : terms_) {
    PadicElement s = v * c;
    if (!s.is_zero()) m.terms_.push_back({mono, s});
  }
  return m;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(spec_, nvars_, PadicElement::one(spec_));
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) return false;
  return (a - b).is_zero();
}

bool MultiPoly::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second.is_integral(); });
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.to_string() << ")";
    for (unsigned i = 0; i < nvars_; ++i) {
      if (it->first[i] == 0) continue;
      os << "*x" << i + 1;
      if (it->first[i] > 1) os << "^" << it->first[i];
    }
  }
  return os.str();
}

MultiPoly compose(const UniPoly& p, const MultiPoly& g) {
  MultiPoly acc(g.spec(), g.nvars());
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * g + MultiPoly::constant(g.spec(), g.nvars(), p.coeff(i));
  }
  return acc;
}

}  // namespace padyn
