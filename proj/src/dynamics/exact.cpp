#include "exact.hpp"

#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "padyn/error.hpp"

namespace padyn::detail {

namespace {

using Q = boost::multiprecision::cpp_rational;
using QVec = std::vector<Q>;

constexpr unsigned kBitBudget = 1 << 11;

struct TooLarge {};

Q rational(const PadicElement& c) {
  auto r = rational_reconstruct(c);
  if (!r) throw TooLarge{};
  return Q(r->first) / Q(r->second);
}

void check_size(const Q& q) {
  if (boost::multiprecision::msb(abs(numerator(q)) + 1) > kBitBudget ||
      boost::multiprecision::msb(denominator(q)) > kBitBudget) {
    throw TooLarge{};
  }
}

Q eval(const UniPoly& f, const Q& x) {
  Q acc = 0;
  for (int i = f.degree(); i >= 0; --i) acc = acc * x + rational(f.coeff(i));
  check_size(acc);
  return acc;
}

Q eval(const MultiPoly& f, const QVec& x) {
  Q acc = 0;
  for (const auto& [mono, c] : f.terms()) {
    Q t = rational(c);
    for (std::size_t j = 0; j < x.size(); ++j) {
      for (unsigned e = 0; e < mono[j]; ++e) t *= x[j];
    }
    acc += t;
  }
  check_size(acc);
  return acc;
}

QVec solve(std::vector<QVec> m, QVec b) {
  const std::size_t r = b.size();
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t piv = c;
    while (piv < r && m[piv][c] == 0) ++piv;
    if (piv == r) throw TooLarge{};
    std::swap(m[c], m[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Q f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < r; ++j) m[i][j] -= f * m[c][j];
      b[i] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < r; ++i) b[i] /= m[i][i];
  return b;
}

QVec step(const Factor& f, const QVec& x) {
  if (const auto* h = std::get_if<HenonFactor>(&f.body)) {
    const Q a = rational(h->a);
    if (!f.inverted) return {eval(h->poly, x[0]) - a * x[1], x[0]};
    return {x[1], (eval(h->poly, x[1]) - x[0]) / a};
  }
  if (const auto* t = std::get_if<TriangularAuto>(&f.body)) {
    const std::size_t r = x.size();
    QVec y(r);
    if (!f.inverted) {
      for (std::size_t i = 0; i < r; ++i) y[i] = rational(t->a[i]) * x[i] + eval(t->F[i], x);
      return y;
    }
    for (std::size_t i = r; i-- > 0;) y[i] = (x[i] - eval(t->F[i], y)) / rational(t->a[i]);
    return y;
  }
  const auto& af = std::get<AffineAuto>(f.body);
  const std::size_t r = x.size();
  std::vector<QVec> m(r, QVec(r));
  QVec b(r);
  for (std::size_t i = 0; i < r; ++i) {
    b[i] = rational(af.translation[i]);
    for (std::size_t j = 0; j < r; ++j) m[i][j] = rational(af.matrix[i][j]);
  }
  if (f.inverted) {
    QVec rhs(r);
    for (std::size_t i = 0; i < r; ++i) rhs[i] = x[i] - b[i];
    return solve(std::move(m), std::move(rhs));
  }
  QVec y(r);
  for (std::size_t i = 0; i < r; ++i) {
    y[i] = b[i];
    for (std::size_t j = 0; j < r; ++j) y[i] += m[i][j] * x[j];
  }
  return y;
}

std::int64_t lift_integer(const PadicElement& c, unsigned level) {
  return static_cast<std::int64_t>(c.reduce(level)[0]);
}

}  // namespace

Vector integer_lift(const Vector& point, unsigned level) {
  Vector out;
  for (const auto& c : point) out.push_back(PadicElement::from_int(c.spec(), lift_integer(c, level)));
  return out;
}

std::optional<std::uint64_t> exact_period(const AutoWord& w, const RationalPoint& x, std::uint64_t max_iter) {
  if (w.spec().degree() != 1 || x.size() != w.dimension()) return std::nullopt;
  QVec start;
  for (auto [a, b] : x) {
    if (b == 0) return std::nullopt;
    start.push_back(Q(a) / Q(b));
  }
  const std::vector<Factor> seq = application_sequence(w);
  try {
    QVec cur = start;
    for (std::uint64_t m = 1; m <= max_iter; ++m) {
      for (const auto& f : seq) cur = step(f, cur);
      if (cur == start) return m;
    }
  } catch (const TooLarge&) {
  } catch (const std::overflow_error&) {
  }
  return std::nullopt;
}

std::optional<std::uint64_t> exact_period(const AutoWord& w, const Vector& point, unsigned level, std::uint64_t n) {
  if (w.spec().degree() != 1 || n == 0) return std::nullopt;
  RationalPoint x;
  for (const auto& c : point) {
    if (!c.is_integral()) return std::nullopt;
    x.push_back({lift_integer(c, level), 1});
  }
  auto m = exact_period(w, x, n);
  if (m && n % *m == 0) return m;
  return std::nullopt;
}

std::optional<RationalPoint> reconstruct_point(const Vector& point) {
  RationalPoint out;
  for (const auto& c : point) {
    auto r = rational_reconstruct(c);
    if (!r) return std::nullopt;
    out.push_back(*r);
  }
  return out;
}

void annotate_rational(const AutoWord& w, std::vector<PeriodicPointRecord>& records) {
  for (auto& r : records) {
    r.rational.reset();
    auto q = reconstruct_point(r.point);
    if (!q || exact_period(w, *q, r.period) != r.period) continue;
    std::vector<std::string> out;
    for (auto [a, b] : *q) out.push_back(b == 1 ? std::to_string(a) : std::to_string(a) + "/" + std::to_string(b));
    r.rational = std::move(out);
  }
}

std::optional<std::pair<std::int64_t, std::int64_t>> parse_rational(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto slash = s.find('/');
    const std::int64_t a = std::stoll(s.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? s.size() : slash)) return std::nullopt;
    if (slash == std::string::npos) return std::make_pair(a, std::int64_t{1});
    const std::string den = s.substr(slash + 1);
    const std::int64_t b = std::stoll(den, &used);
    if (used != den.size() || b == 0) return std::nullopt;
    return std::make_pair(a, b);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace padyn::detail
