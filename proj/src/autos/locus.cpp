#include "padyn/locus.hpp"

#include <algorithm>

#include "padyn/error.hpp"
#include "padyn/lifting.hpp"

namespace padyn {

namespace {

constexpr std::uint64_t kMaxResidueEnumeration = std::uint64_t{1} << 20;

bool same_point(const ProjectivePoint& a, const ProjectivePoint& b) { return a.x == b.x && a.y == b.y; }

void insert_point(ProjectivePointSet& s, ProjectivePoint pt) {
  if (!s.contains(pt)) s.points.push_back(std::move(pt));
}

void check_plane(const AutoWord& w) {
  if (w.dimension() != 2) fail(ErrorKind::InvalidArgument, "indeterminacy loci are computed only for r = 2");
}

std::vector<Coeffs> residues_of_field(FieldSpec spec) {
  ResidueRing ring(spec, 1);
  if (ring.size() > kMaxResidueEnumeration) {
    fail(ErrorKind::BudgetExceeded, "residue field too large to enumerate");
  }
  std::vector<Coeffs> out;
  for (std::uint64_t i = 0; i < ring.size(); ++i) out.push_back(ring.from_index(i));
  return out;
}

// g(c + s y) as a polynomial in y.
UniPoly shift_scale(const UniPoly& g, const PadicElement& c, const PadicElement& s) {
  const FieldSpec spec = g.spec();
  UniPoly lin(spec, {c, s});
  UniPoly out(spec, {});
  for (int i = g.degree(); i >= 0; --i) out = out * lin + UniPoly(spec, {g.coeff(i)});
  return out;
}

UniPoly primitive_part(const UniPoly& g) {
  const FieldSpec spec = g.spec();
  int v = g.content_valuation();
  if (v == 0) return g;
  return g.scaled(PadicElement::from_int(spec, static_cast<std::int64_t>(spec.prime())).pow(-v));
}

// Roots in O of a squarefree polynomial.
void integral_roots(const UniPoly& g_in, unsigned depth, std::vector<PadicElement>& out) {
  const FieldSpec spec = g_in.spec();
  if (g_in.degree() <= 0) return;
  UniPoly g = primitive_part(g_in);
  if (g.coeff(0).is_zero()) {
    out.push_back(PadicElement::zero(spec));
    g = g.divmod(UniPoly(spec, {PadicElement::zero(spec), PadicElement::one(spec)})).first;
    if (g.degree() <= 0) return;
    g = primitive_part(g);
  }
  ResidueRing ring(spec, 1);
  std::vector<ResidueElement> red = g.reduce();
  std::vector<ResidueElement> dred = g.derivative().reduce();
  auto eval = [&](const std::vector<ResidueElement>& c, const Coeffs& x) {
    Coeffs acc = ring.zero();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = ring.add(ring.mul(acc, x), it->coeffs);
    return acc;
  };
  const PadicElement p = PadicElement::from_int(spec, static_cast<std::int64_t>(spec.prime()));
  for (const Coeffs& r : residues_of_field(spec)) {
    if (!ring.is_zero(eval(red, r))) continue;
    ResidueElement re{spec, r};
    if (!ring.is_zero(eval(dred, r))) {
      out.push_back(hensel_lift_root(g, re));
      continue;
    }
    PadicElement base = PadicElement::from_residue(re);
    if (depth >= spec.precision()) {
      out.push_back(base);
      continue;
    }
    std::vector<PadicElement> sub;
    integral_roots(shift_scale(g, base, p), depth + 1, sub);
    for (const auto& y : sub) out.push_back(base + p * y);
  }
}

UniPoly squarefree_part(const UniPoly& g) {
  UniPoly d = gcd(g, g.derivative());
  if (d.degree() <= 0) return g;
  return g.divmod(d).first;
}

// Binary form sum c_i X^i Y^(D-i) restricted to the chart Y = 1 (or X = 1).
UniPoly chart(const MultiPoly& form, int degree, bool y_chart) {
  const FieldSpec spec = form.spec();
  std::vector<PadicElement> c(degree + 1, PadicElement::zero(spec));
  for (const auto& [m, v] : form.terms()) c[y_chart ? m[0] : m[1]] = v;
  return UniPoly(spec, std::move(c));
}

struct TopForms {
  int degree;
  std::vector<MultiPoly> forms;
};

TopForms top_of(const std::vector<MultiPoly>& g) {
  int D = 0;
  for (const auto& c : g) D = std::max(D, c.total_degree());
  TopForms t{D, {}};
  for (const auto& c : g) t.forms.push_back(c.homogeneous_part(D));
  return t;
}

// Top homogeneous parts of the composed map. If G has top forms G_D in
// degree D and F has top forms F_d, then F(G) has top forms F_d(G_D) in
// degree dD unless all of them vanish; only then is the full expansion needed.
TopForms top_forms(const AutoWord& w, int max_degree) {
  const FieldSpec spec = w.spec();
  const unsigned r = w.dimension();
  TopForms cur{1, {}};
  for (unsigned i = 0; i < r; ++i) cur.forms.push_back(MultiPoly::variable(spec, r, i));
  for (const auto& f : application_sequence(w)) {
    TopForms ft = top_of(compose_symbolic(AutoWord(spec, r, {f}), max_degree));
    std::vector<MultiPoly> next;
    bool all_zero = true;
    for (const auto& c : ft.forms) {
      next.push_back(c.substitute(cur.forms));
      all_zero = all_zero && next.back().is_zero();
    }
    if (all_zero) return top_of(compose_symbolic(w, max_degree));
    cur = TopForms{cur.degree * ft.degree, std::move(next)};
    if (cur.degree > max_degree) {
      fail(ErrorKind::DegreeOverflow, "composition degree " + std::to_string(cur.degree) + " exceeds the limit " +
                                          std::to_string(max_degree));
    }
  }
  return cur;
}

ProjectivePointSet generic_locus(const TopForms& top) {
  const int D = top.degree;
  ProjectivePointSet out{LocusField::Generic, {}};
  const MultiPoly& A = top.forms[0];
  const MultiPoly& B = top.forms[1];
  const FieldSpec spec = A.spec();
  const PadicElement one = PadicElement::one(spec);
  // [x:1:0] with x integral.
  UniPoly h = gcd(chart(A, D, true), chart(B, D, true));
  if (h.degree() > 0) {
    for (const auto& x : roots_in_field(h)) {
      if (!x.is_zero() && *x.valuation() < 0) continue;
      if (x.is_zero()) insert_point(out, {PadicElement::zero(spec), one});
      else insert_point(out, {one, x.inverse()});
    }
  }
  // [1:y:0] with v(y) > 0, including y = 0.
  UniPoly k = gcd(chart(A, D, false), chart(B, D, false));
  if (k.degree() > 0) {
    for (const auto& y : roots_in_field(k)) {
      if (!y.is_zero() && *y.valuation() <= 0) continue;
      insert_point(out, {one, y});
    }
  }
  return out;
}

ProjectivePointSet special_locus(const std::vector<MultiPoly>& g) {
  const FieldSpec spec = g[0].spec();
  ResidueRing ring(spec, 1);
  // Reduced coordinates as (monomial, residue) lists.
  std::vector<std::vector<std::pair<Monomial, Coeffs>>> red(2);
  int D = -1;
  for (unsigned i = 0; i < 2; ++i) {
    for (const auto& [m, c] : g[i].terms()) {
      if (!c.is_integral()) fail(ErrorKind::NonIntegralCoefficient, "composed map is not integral");
      Coeffs r = reduce_to_residue(c).coeffs;
      if (ring.is_zero(r)) continue;
      red[i].push_back({m, r});
      D = std::max(D, m[0] + m[1]);
    }
  }
  if (D <= 0) fail(ErrorKind::DegenerateReduction, "reduced map is constant");
  auto vanishes = [&](const Coeffs& x, const Coeffs& y) {
    for (const auto& coord : red) {
      Coeffs acc = ring.zero();
      for (const auto& [m, c] : coord) {
        if (m[0] + m[1] != D) continue;
        acc = ring.add(acc, ring.mul(c, ring.mul(ring.pow(x, m[0]), ring.pow(y, m[1]))));
      }
      if (!ring.is_zero(acc)) return false;
    }
    return true;
  };
  ProjectivePointSet out{LocusField::Special, {}};
  auto lift = [&](const Coeffs& c) { return PadicElement::from_residue(ResidueElement{spec, c}); };
  if (vanishes(ring.zero(), ring.one())) out.points.push_back({lift(ring.zero()), lift(ring.one())});
  for (const Coeffs& y : residues_of_field(spec)) {
    if (vanishes(ring.one(), y)) out.points.push_back({lift(ring.one()), lift(y)});
  }
  return out;
}

}  // namespace

bool ProjectivePointSet::contains(const ProjectivePoint& pt) const {
  return std::any_of(points.begin(), points.end(), [&](const ProjectivePoint& q) { return same_point(q, pt); });
}

bool ProjectivePointSet::intersects(const ProjectivePointSet& other) const {
  return std::any_of(points.begin(), points.end(), [&](const ProjectivePoint& q) { return other.contains(q); });
}

bool operator==(const ProjectivePointSet& a, const ProjectivePointSet& b) {
  if (a.points.size() != b.points.size()) return false;
  return std::all_of(a.points.begin(), a.points.end(), [&](const ProjectivePoint& q) { return b.contains(q); });
}

std::vector<std::string> ProjectivePointSet::to_strings() const {
  std::vector<std::string> out;
  for (const auto& pt : points) {
    auto show = [&](const PadicElement& c) {
      return field == LocusField::Special ? reduce_to_residue(c).to_string() : c.to_string();
    };
    out.push_back("[" + show(pt.x) + ":" + show(pt.y) + ":0]");
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string ProjectivePointSet::to_string() const {
  std::string s = "{";
  auto parts = to_strings();
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
  return s + "}";
}

std::vector<PadicElement> roots_in_field(const UniPoly& g) {
  if (g.degree() <= 0) return {};
  const UniPoly sf = squarefree_part(g);
  std::vector<PadicElement> found;
  integral_roots(sf, 0, found);
  // Roots of negative valuation are inverses of roots of the reversed
  // polynomial with positive valuation.
  std::vector<PadicElement> rev_coeffs(sf.coeffs().rbegin(), sf.coeffs().rend());
  UniPoly rev(sf.spec(), std::move(rev_coeffs));
  std::vector<PadicElement> inv;
  integral_roots(rev, 0, inv);
  for (const auto& y : inv) {
    if (!y.is_zero() && *y.valuation() > 0) found.push_back(y.inverse());
  }
  std::vector<PadicElement> out;
  for (auto& x : found) {
    if (std::none_of(out.begin(), out.end(), [&](const PadicElement& o) { return o == x; })) out.push_back(x);
  }
  return out;
}

ProjectivePointSet locus_of_polys(const std::vector<MultiPoly>& coords, LocusField where) {
  if (coords.size() != 2) fail(ErrorKind::InvalidArgument, "indeterminacy loci are computed only for r = 2");
  return where == LocusField::Generic ? generic_locus(top_of(coords)) : special_locus(coords);
}

ProjectivePointSet indeterminacy_locus(const AutoWord& w, LocusField where, int max_degree) {
  check_plane(w);
  if (where == LocusField::Generic) return generic_locus(top_forms(w, max_degree));
  return special_locus(compose_symbolic(w, max_degree));
}

bool is_regular(const AutoWord& w, int max_degree) {
  check_plane(w);
  TopForms top = top_forms(w, max_degree);
  if (top.degree <= 1) return false;
  auto z = generic_locus(top);
  auto zi = indeterminacy_locus(inverse(w), LocusField::Generic, max_degree);
  return !z.intersects(zi);
}

bool is_special_henon(const AutoWord& w, int max_degree) {
  if (w.dimension() != 2 || !w.is_henon_product()) return false;
  for (const auto& f : w.factors()) {
    const auto& h = std::get<HenonFactor>(f.body);
    if (!h.a.is_integral()) return false;
    for (const auto& c : h.poly.coeffs()) {
      if (!c.is_integral()) return false;
    }
  }
  try {
    auto z = indeterminacy_locus(w, LocusField::Special, max_degree);
    auto zi = indeterminacy_locus(inverse(w), LocusField::Special, max_degree);
    return !z.intersects(zi);
  } catch (const Error& e) {
    // A non-integral or degenerate inverse has the whole special fiber as
    // its locus.
    if (e.kind() == ErrorKind::NonIntegralCoefficient || e.kind() == ErrorKind::DegenerateReduction) return false;
    throw;
  }
}

bool henon_coefficient_criterion(const AutoWord& w) {
  if (w.dimension() != 2 || !w.is_henon_product()) return false;
  for (const auto& f : w.factors()) {
    const auto& h = std::get<HenonFactor>(f.body);
    if (!h.a.is_unit()) return false;
    for (const auto& c : h.poly.coeffs()) {
      if (!c.is_integral()) return false;
    }
  }
  return true;
}

bool check_iterate_locus(const AutoWord& w, unsigned n_max, int max_degree) {
  if (n_max == 0) return true;
  check_plane(w);
  const AutoWord wi = inverse(w);
  const auto z = indeterminacy_locus(w, LocusField::Generic, max_degree);
  const auto zi = indeterminacy_locus(wi, LocusField::Generic, max_degree);
  for (unsigned n = 2; n <= n_max; ++n) {
    if (!(indeterminacy_locus(power(w, n), LocusField::Generic, max_degree) == z)) return false;
    if (!(indeterminacy_locus(power(wi, n), LocusField::Generic, max_degree) == zi)) return false;
  }
  return true;
}

}  // namespace padyn
