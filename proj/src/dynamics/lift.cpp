#include <algorithm>
#include <numeric>

#include "padyn/dynamics.hpp"
#include "padyn/error.hpp"
#include "padyn/lifting.hpp"
#include "padyn/locus.hpp"
#include "exact.hpp"

namespace padyn {

namespace {

bool same_point(const Vector& a, const Vector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

// Largest k with every component known to vanish modulo p^k.
int zero_order(const Vector& v) {
  int k = INT_MAX;
  for (const auto& x : v) k = std::min(k, x.is_zero() ? x.absolute_precision() : *x.valuation());
  return k;
}

// v agrees with s modulo p^k.
bool congruent(const PadicElement& v, const PadicElement& s, unsigned k) {
  if (!v.is_integral()) return false;
  PadicElement d = v - s;
  return d.is_zero() ? d.absolute_precision() >= static_cast<int>(k) : *d.valuation() >= static_cast<int>(k);
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d * d != n) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<Vector, Matrix> fixed_point_system(const AutoWord& wm, const Vector& x) {
  auto [y, j] = apply_with_jacobian(wm, x);
  const PadicElement one = PadicElement::one(wm.spec());
  for (std::size_t i = 0; i < j.size(); ++i) j[i][i] = j[i][i] - one;
  return {y - x, std::move(j)};
}


// Hensel: G vanishing to order g at x with v(det J) = delta < g / 2 gives a
// unique root y with v(y - x) > delta, and y = x mod p^(g - delta).
struct HenselRoot {
  Vector point;
  int radius;
};

std::optional<HenselRoot> hensel_root(const AutoWord& wm, const Vector& start) {
  auto system = [&](const Vector& x) { return fixed_point_system(wm, x); };
  try {
    if (determinant(system(start).second).is_zero()) return std::nullopt;
    Vector p = newton_refine(system, start);
    auto [g, j] = system(p);
    const PadicElement det = determinant(j);
    if (det.is_zero()) return std::nullopt;
    const int delta = *det.valuation();
    const int order = zero_order(g);
    if (order <= 2 * delta) return std::nullopt;
    const int radius = std::min(order - delta, static_cast<int>(wm.spec().precision()));
    for (auto& c : p) c = c.add_big_oh(radius);
    return HenselRoot{std::move(p), radius};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularJacobian && e.kind() != ErrorKind::NoConvergence &&
        e.kind() != ErrorKind::DivisionByZero) {
      throw;
    }
  }
  return std::nullopt;
}

bool congruent_point(const Vector& a, const Vector& b, int k) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!congruent(a[i], b[i], static_cast<unsigned>(k))) return false;
  }
  return true;
}

// Least divisor m of n with w^m(P) = P, where P approximates the unique root
// of w^n - id within radius. A smaller m is accepted only when w^m - id has a
// certified root in the same ball; agreement without one is inconclusive.
std::uint64_t minimal_period(const AutoWord& w, const Vector& point, std::uint64_t n, int radius) {
  for (std::uint64_t m : divisors(n)) {
    if (m == n) break;
    const AutoWord wm = power(w, static_cast<unsigned>(m));
    if (!same_point(padyn::apply(wm, point), point)) continue;
    auto root = hensel_root(wm, point);
    if (root && congruent_point(root->point, point, std::min(radius, root->radius))) return m;
    fail(ErrorKind::SingularJacobian, "cannot separate period " + std::to_string(m) + " from " + std::to_string(n));
  }
  return n;
}

// Exact arithmetic variant: the point is a root to full precision.
std::uint64_t minimal_period(const AutoWord& w, const Vector& point, std::uint64_t n) {
  for (std::uint64_t m : divisors(n)) {
    if (m == n) break;
    if (same_point(padyn::apply(power(w, static_cast<unsigned>(m)), point), point)) return m;
  }
  return n;
}

using Coordinates = std::vector<MultiPoly>;

Coordinates compose_maps(const Coordinates& f, const Coordinates& g) {
  Coordinates out;
  for (const auto& c : f) {
    out.push_back(c.substitute(g));
    if (out.back().total_degree() > kDefaultMaxDegree) fail(ErrorKind::DegreeOverflow, "iterate degree too large");
  }
  return out;
}

Coordinates power_map(const Coordinates& f, std::uint64_t m) {
  const FieldSpec spec = f.front().spec();
  const unsigned r = f.front().nvars();
  Coordinates result;
  for (unsigned i = 0; i < r; ++i) result.push_back(MultiPoly::variable(spec, r, i));
  Coordinates base = f;
  while (m > 0) {
    if (m & 1) result = compose_maps(base, result);
    m >>= 1;
    if (m) base = compose_maps(base, base);
  }
  return result;
}

// Fixed points of a triangular map Phi congruent to `start` modulo p^level.
// Coordinate i of Phi is A_i x_i + H_i(x_{i+1}, ...). Coordinates with A_i = 1
// and H_i = 0 are free; a later equation H_j = 0 in a single free variable is
// solved for it.
class TriangularSolver {
 public:
  TriangularSolver(const Coordinates& phi, const Vector& start, unsigned level)
      : phi_(phi), start_(start), level_(level), r_(static_cast<unsigned>(start.size())) {}

  std::vector<Vector> solve() {
    out_.clear();
    std::vector<std::optional<PadicElement>> x(r_);
    step(static_cast<int>(r_) - 1, x);
    return out_;
  }

 private:
  void step(int i, std::vector<std::optional<PadicElement>> x) {
    const FieldSpec spec = phi_.front().spec();
    if (i < 0) {
      Vector p;
      for (unsigned j = 0; j < r_; ++j) p.push_back(x[j] ? *x[j] : start_[j]);
      out_.push_back(std::move(p));
      return;
    }
    Monomial mi{};
    mi[i] = 1;
    const PadicElement A = phi_[i].coefficient(mi);
    const MultiPoly H = phi_[i] - MultiPoly::variable(spec, r_, i).scaled(A);
    Coordinates images;
    for (unsigned j = 0; j < r_; ++j) {
      if (static_cast<int>(j) <= i) images.push_back(MultiPoly(spec, r_));
      else if (x[j]) images.push_back(MultiPoly::constant(spec, r_, *x[j]));
      else images.push_back(MultiPoly::variable(spec, r_, j));
    }
    const MultiPoly h = H.substitute(images);
    std::vector<unsigned> free_vars;
    for (unsigned j = i + 1; j < r_; ++j) {
      if (!x[j] && h.degree_in(j) > 0) free_vars.push_back(j);
    }
    const bool unipotent = (A - PadicElement::one(spec)).is_zero();
    if (!free_vars.empty()) {
      if (unipotent && free_vars.size() == 1) {
        const unsigned j = free_vars.front();
        std::vector<PadicElement> c(h.degree_in(j) + 1, PadicElement::zero(spec));
        for (const auto& [m, v] : h.terms()) c[m[j]] = v;
        for (const auto& root : roots_in_field(UniPoly(spec, std::move(c)))) {
          if (!congruent(root, start_[j], level_)) continue;
          auto y = x;
          y[j] = root;
          step(i, std::move(y));
        }
        return;
      }
      // Pin the free coordinates to the residue lift and continue.
      for (unsigned j : free_vars) x[j] = start_[j];
      step(i, std::move(x));
      return;
    }
    const PadicElement value = h.coefficient(Monomial{});
    if (unipotent) {
      if (value.is_zero()) step(i - 1, std::move(x));
      return;
    }
    PadicElement xi = value / (PadicElement::one(spec) - A);
    if (!congruent(xi, start_[i], level_)) return;
    x[i] = xi;
    step(i - 1, std::move(x));
  }

  const Coordinates& phi_;
  const Vector& start_;
  unsigned level_;
  unsigned r_;
  std::vector<Vector> out_;
};

std::vector<PeriodicPointRecord> triangular_lifts(const AutoWord& w, const Vector& start, std::uint64_t n,
                                                  unsigned level) {
  const Coordinates phi = compose_symbolic(w);
  const std::uint64_t mu = triangular_mu_bound(w);
  std::vector<PeriodicPointRecord> out;
  for (std::uint64_t d : divisors(mu)) {
    const std::uint64_t m = n * d;
    std::vector<Vector> candidates;
    try {
      candidates = TriangularSolver(power_map(phi, m), start, level).solve();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DegreeOverflow) continue;
      throw;
    }
    for (auto& p : candidates) {
      if (!same_point(padyn::apply(power(w, static_cast<unsigned>(m)), p), p)) continue;
      const std::uint64_t period = minimal_period(w, p, m);
      bool dup = std::any_of(out.begin(), out.end(), [&](const PeriodicPointRecord& r) { return same_point(r.point, p); });
      if (dup) continue;
      out.push_back(PeriodicPointRecord{std::move(p), period, true, n, level, "triangular", {}});
    }
  }
  return out;
}

}  // namespace

std::optional<std::uint64_t> detect_period(const AutoWord& w, const Vector& point, std::uint64_t max_iter) {
  Vector x = point;
  for (std::uint64_t n = 1; n <= max_iter; ++n) {
    x = padyn::apply(w, x);
    if (same_point(x, point)) return n;
  }
  return std::nullopt;
}

std::uint64_t triangular_mu_bound(const AutoWord& w) {
  if (!w.is_triangular() || w.has_conjugator()) fail(ErrorKind::InvalidArgument, "word is not triangular");
  const Coordinates phi = compose_symbolic(w);
  std::uint64_t mu = 1;
  for (unsigned i = 0; i < w.dimension(); ++i) {
    Monomial mi{};
    mi[i] = 1;
    const PadicElement a = phi[i].coefficient(mi);
    if (!a.is_unit()) continue;
    if (auto ord = root_of_unity_order(a)) mu = std::lcm(mu, *ord);
  }
  return mu;
}

PeriodicPointRecord lift_periodic(const AutoWord& w, const Vector& start, std::uint64_t n, unsigned level) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "cycle length must be positive");
  const AutoWord wm = power(w, static_cast<unsigned>(n));
  auto [g0, j0] = fixed_point_system(wm, start);
  if (zero_order(g0) < static_cast<int>(level)) {
    fail(ErrorKind::ResidueNotASolution, "start point is not on a cycle of the given length");
  }
  if (auto root = hensel_root(wm, start)) {
    if (root->radius >= static_cast<int>(level) && congruent_point(root->point, start, static_cast<int>(level))) {
      const std::uint64_t period = minimal_period(w, root->point, n, root->radius);
      return PeriodicPointRecord{root->point, period, true, n, level, "newton", {}};
    }
  }
  if (auto m = detail::exact_period(w, start, level, n)) {
    return PeriodicPointRecord{detail::integer_lift(start, level), *m, true, n, level, "exact", {}};
  }
  fail(ErrorKind::SingularJacobian, "degenerate residue cycle of length " + std::to_string(n));
}

std::vector<PeriodicPointRecord> lift_residue_cycle(const AutoWord& w, const Vector& start, std::uint64_t n,
                                                    unsigned level) {
  if (w.is_triangular() && !w.has_conjugator()) return triangular_lifts(w, start, n, level);
  try {
    return {lift_periodic(w, start, n, level)};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularJacobian || e.kind() == ErrorKind::NoConvergence) return {};
    throw;
  }
}

bool on_same_orbit(const AutoWord& w, const PeriodicPointRecord& a, const PeriodicPointRecord& b) {
  if (a.period != b.period) return false;
  Vector x = a.point;
  for (std::uint64_t i = 0; i < a.period; ++i) {
    if (same_point(x, b.point)) return true;
    x = padyn::apply(w, x);
  }
  return false;
}

PeriodicPoints enumerate_periodic_points(const AutoWord& w, std::uint64_t n_max, unsigned level,
                                         std::uint64_t budget) {
  LevelMap map(w, level);
  PeriodicPoints out;
  for_each_cycle(map, budget, [&](std::uint64_t s, std::uint64_t len) {
    if (len > n_max) return;
    Vector start = map.lift(s);
    auto recs = lift_residue_cycle(w, start, len, level);
    if (recs.empty()) out.uncertified.push_back({level, len, start});
    for (auto& r : recs) {
      bool dup = std::any_of(out.records.begin(), out.records.end(),
                             [&](const PeriodicPointRecord& q) { return on_same_orbit(w, q, r); });
      if (!dup) out.records.push_back(std::move(r));
    }
  });
  detail::annotate_rational(w, out.records);
  return out;
}

}  // namespace padyn
