#include "padyn/word.hpp"

#include <algorithm>
#include <sstream>

#include "padyn/error.hpp"

namespace padyn {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

PadicElement residue_lift(const PadicElement& c) {
  if (!c.is_integral()) {
    fail(ErrorKind::NonIntegralCoefficient, "coefficient " + c.to_string() + " is not in O");
  }
  return PadicElement::from_residue(reduce_to_residue(c));
}

MultiPoly residue_lift(const MultiPoly& p) {
  std::vector<MultiPoly::Term> terms;
  for (const auto& [m, c] : p.terms()) terms.push_back({m, residue_lift(c)});
  return MultiPoly::from_terms(p.spec(), p.nvars(), std::move(terms));
}

// Images of the coordinates under the inverse of a triangular map.
template <class T, class Eval, class Div>
std::vector<T> solve_triangular(const TriangularAuto& t, const std::vector<T>& y, T zero, Eval eval, Div div) {
  const unsigned r = t.dimension();
  std::vector<T> x(r, zero);
  for (unsigned i = r; i-- > 0;) x[i] = div(y[i] - eval(t.F[i], x), t.a[i]);
  return x;
}

void check_degree(const std::vector<MultiPoly>& g, int max_degree) {
  for (const auto& p : g) {
    if (p.total_degree() > max_degree) {
      fail(ErrorKind::DegreeOverflow, "composition degree " + std::to_string(p.total_degree()) +
                                          " exceeds the limit " + std::to_string(max_degree));
    }
  }
}

std::vector<MultiPoly> apply_symbolic(const Factor& f, const std::vector<MultiPoly>& g) {
  const FieldSpec spec = g.front().spec();
  const unsigned n = g.front().nvars();
  return std::visit(
      overloaded{
          [&](const HenonFactor& h) -> std::vector<MultiPoly> {
            if (!f.inverted) return {compose(h.poly, g[0]) - g[1].scaled(h.a), g[0]};
            return {g[1], (compose(h.poly, g[1]) - g[0]).scaled(h.a.inverse())};
          },
          [&](const TriangularAuto& t) -> std::vector<MultiPoly> {
            if (!f.inverted) {
              std::vector<MultiPoly> out;
              for (unsigned i = 0; i < t.dimension(); ++i) {
                out.push_back(g[i].scaled(t.a[i]) + t.F[i].substitute(g));
              }
              return out;
            }
            return solve_triangular(
                t, g, MultiPoly(spec, n),
                [](const MultiPoly& F, const std::vector<MultiPoly>& x) { return F.substitute(x); },
                [](const MultiPoly& num, const PadicElement& a) { return num.scaled(a.inverse()); });
          },
          [&](const AffineAuto& af) -> std::vector<MultiPoly> {
            const Matrix& m = f.inverted ? af.matrix_inverse : af.matrix;
            std::vector<MultiPoly> shifted = g;
            if (f.inverted) {
              for (unsigned i = 0; i < g.size(); ++i) {
                shifted[i] = g[i] - MultiPoly::constant(spec, n, af.translation[i]);
              }
            }
            std::vector<MultiPoly> out;
            for (unsigned i = 0; i < g.size(); ++i) {
              MultiPoly acc = f.inverted ? MultiPoly(spec, n) : MultiPoly::constant(spec, n, af.translation[i]);
              for (unsigned j = 0; j < g.size(); ++j) acc = acc + shifted[j].scaled(m[i][j]);
              out.push_back(acc);
            }
            return out;
          },
      },
      f.body);
}

}  // namespace

HenonFactor HenonFactor::make(PadicElement a, UniPoly poly) {
  if (a.is_zero()) fail(ErrorKind::InvalidArgument, "Henon coefficient a must be nonzero");
  if (!(a.spec() == poly.spec())) fail(ErrorKind::SpecMismatch, "Henon data from different fields");
  if (poly.degree() < 2) fail(ErrorKind::InvalidArgument, "Henon polynomial must have degree >= 2");
  if (!(poly.leading() == PadicElement::one(poly.spec()))) {
    fail(ErrorKind::InvalidArgument, "Henon polynomial must be monic");
  }
  return HenonFactor{std::move(a), std::move(poly)};
}

TriangularAuto TriangularAuto::make(std::vector<PadicElement> a, std::vector<MultiPoly> F) {
  const unsigned r = static_cast<unsigned>(a.size());
  if (r == 0 || F.size() != r) fail(ErrorKind::InvalidArgument, "triangular map needs r coefficients and r polynomials");
  for (unsigned i = 0; i < r; ++i) {
    if (a[i].is_zero()) fail(ErrorKind::InvalidArgument, "triangular coefficients a_i must be nonzero");
    if (F[i].nvars() != r) fail(ErrorKind::InvalidArgument, "F_i must be a polynomial in r variables");
    if (F[i].first_variable() <= i) {
      fail(ErrorKind::InvalidArgument, "F_" + std::to_string(i + 1) + " may only use later variables");
    }
  }
  TriangularAuto t{std::move(a), std::move(F), {}};
  for (unsigned i = 0; i < r; ++i) {
    t.dF.emplace_back();
    for (unsigned j = 0; j < r; ++j) t.dF[i].push_back(t.F[i].derivative(j));
  }
  return t;
}

AffineAuto AffineAuto::make(Matrix matrix, Vector translation) {
  const std::size_t r = translation.size();
  if (r == 0 || matrix.size() != r) fail(ErrorKind::InvalidArgument, "affine map shape mismatch");
  for (const auto& row : matrix) {
    if (row.size() != r) fail(ErrorKind::InvalidArgument, "affine matrix must be square");
  }
  if (determinant(matrix).is_zero()) fail(ErrorKind::InvalidArgument, "affine matrix is singular");
  Matrix inv = inverse(matrix);
  return AffineAuto{std::move(matrix), std::move(translation), std::move(inv)};
}

unsigned Factor::dimension() const {
  return std::visit(overloaded{[](const HenonFactor&) { return 2u; },
                               [](const TriangularAuto& t) { return t.dimension(); },
                               [](const AffineAuto& a) { return a.dimension(); }},
                    body);
}

AutoWord::AutoWord(FieldSpec spec, unsigned dimension, std::vector<Factor> factors, std::vector<Factor> conjugator)
    : spec_(spec), dimension_(dimension), factors_(std::move(factors)), conjugator_(std::move(conjugator)) {
  if (dimension < 1 || dimension > kMaxVariables) fail(ErrorKind::InvalidArgument, "unsupported dimension");
  for (const auto* list : {&factors_, &conjugator_}) {
    for (const auto& f : *list) {
      if (f.dimension() != dimension) {
        fail(ErrorKind::InvalidArgument, "factor dimension differs from the word dimension");
      }
    }
  }
}

bool AutoWord::is_henon_product() const {
  if (has_conjugator() || factors_.empty()) return false;
  return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) {
    return !f.inverted && std::holds_alternative<HenonFactor>(f.body);
  });
}

bool AutoWord::is_triangular() const {
  return !factors_.empty() && std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) {
    return std::holds_alternative<TriangularAuto>(f.body);
  });
}

Vector apply(const Factor& f, const Vector& x) {
  return std::visit(
      overloaded{
          [&](const HenonFactor& h) -> Vector {
            if (!f.inverted) return {h.poly(x[0]) - h.a * x[1], x[0]};
            return {x[1], (h.poly(x[1]) - x[0]) / h.a};
          },
          [&](const TriangularAuto& t) -> Vector {
            if (!f.inverted) {
              Vector out;
              for (unsigned i = 0; i < t.dimension(); ++i) out.push_back(t.a[i] * x[i] + t.F[i](x));
              return out;
            }
            return solve_triangular(
                t, x, PadicElement::zero(x.front().spec()),
                [](const MultiPoly& F, const Vector& v) { return F(v); },
                [](const PadicElement& num, const PadicElement& a) { return num / a; });
          },
          [&](const AffineAuto& af) -> Vector {
            if (!f.inverted) return af.matrix * x + af.translation;
            return af.matrix_inverse * (x - af.translation);
          },
      },
      f.body);
}

std::pair<Vector, Matrix> apply_with_jacobian(const Factor& f, const Vector& x) {
  const FieldSpec spec = x.front().spec();
  const PadicElement zero = PadicElement::zero(spec);
  const PadicElement one = PadicElement::one(spec);
  return std::visit(
      overloaded{
          [&](const HenonFactor& h) -> std::pair<Vector, Matrix> {
            UniPoly dp = h.poly.derivative();
            if (!f.inverted) return {padyn::apply(f, x), Matrix{{dp(x[0]), -h.a}, {one, zero}}};
            PadicElement inv_a = h.a.inverse();
            return {padyn::apply(f, x), Matrix{{zero, one}, {-inv_a, dp(x[1]) * inv_a}}};
          },
          [&](const TriangularAuto& t) -> std::pair<Vector, Matrix> {
            auto forward_jacobian = [&](const Vector& at) {
              const unsigned r = t.dimension();
              Matrix j(r, Vector(r, zero));
              for (unsigned i = 0; i < r; ++i) {
                j[i][i] = t.a[i];
                for (unsigned k = i + 1; k < r; ++k) j[i][k] = t.dF[i][k](at);
              }
              return j;
            };
            if (!f.inverted) return {padyn::apply(f, x), forward_jacobian(x)};
            Vector y = padyn::apply(f, x);
            return {y, inverse(forward_jacobian(y))};
          },
          [&](const AffineAuto& af) -> std::pair<Vector, Matrix> {
            return {padyn::apply(f, x), f.inverted ? af.matrix_inverse : af.matrix};
          },
      },
      f.body);
}

std::vector<Factor> application_sequence(const AutoWord& w) {
  std::vector<Factor> seq;
  for (auto it = w.conjugator().rbegin(); it != w.conjugator().rend(); ++it) seq.push_back(*it);
  for (auto it = w.factors().rbegin(); it != w.factors().rend(); ++it) seq.push_back(*it);
  for (const auto& c : w.conjugator()) seq.push_back(c.inverse());
  return seq;
}

Vector apply(const AutoWord& w, const Vector& point) {
  if (point.size() != w.dimension()) fail(ErrorKind::InvalidArgument, "point dimension mismatch");
  Vector x = point;
  for (const auto& f : application_sequence(w)) x = padyn::apply(f, x);
  return x;
}

std::pair<Vector, Matrix> apply_with_jacobian(const AutoWord& w, const Vector& point) {
  if (point.size() != w.dimension()) fail(ErrorKind::InvalidArgument, "point dimension mismatch");
  Vector x = point;
  Matrix jac = identity_matrix(w.spec(), w.dimension());
  for (const auto& f : application_sequence(w)) {
    auto [y, j] = padyn::apply_with_jacobian(f, x);
    jac = j * jac;
    x = std::move(y);
  }
  return {x, jac};
}

AutoWord inverse(const AutoWord& w) {
  std::vector<Factor> inv;
  for (auto it = w.factors().rbegin(); it != w.factors().rend(); ++it) inv.push_back(it->inverse());
  return AutoWord(w.spec(), w.dimension(), std::move(inv), w.conjugator());
}

AutoWord power(const AutoWord& w, unsigned n) {
  std::vector<Factor> seq;
  for (unsigned i = 0; i < n; ++i) seq.insert(seq.end(), w.factors().begin(), w.factors().end());
  return AutoWord(w.spec(), w.dimension(), std::move(seq), w.conjugator());
}

std::vector<MultiPoly> compose_symbolic(const AutoWord& w, int max_degree) {
  std::vector<MultiPoly> g;
  for (unsigned i = 0; i < w.dimension(); ++i) g.push_back(MultiPoly::variable(w.spec(), w.dimension(), i));
  for (const auto& f : application_sequence(w)) {
    g = apply_symbolic(f, g);
    check_degree(g, max_degree);
  }
  return g;
}

AutoWord reduce_word(const AutoWord& w) {
  auto reduce_factor = [](const Factor& f) -> Factor {
    return std::visit(
        overloaded{
            [&](const HenonFactor& h) -> Factor {
              PadicElement a = residue_lift(h.a);
              if (a.is_zero()) fail(ErrorKind::DegenerateReduction, "Henon coefficient a reduces to 0");
              std::vector<PadicElement> c;
              for (const auto& x : h.poly.coeffs()) c.push_back(residue_lift(x));
              return Factor{HenonFactor::make(a, UniPoly(h.poly.spec(), std::move(c))), f.inverted};
            },
            [&](const TriangularAuto& t) -> Factor {
              std::vector<PadicElement> a;
              std::vector<MultiPoly> F;
              for (unsigned i = 0; i < t.dimension(); ++i) {
                a.push_back(residue_lift(t.a[i]));
                if (a.back().is_zero()) fail(ErrorKind::DegenerateReduction, "triangular a_i reduces to 0");
                F.push_back(residue_lift(t.F[i]));
              }
              return Factor{TriangularAuto::make(std::move(a), std::move(F)), f.inverted};
            },
            [&](const AffineAuto& af) -> Factor {
              Matrix m = af.matrix;
              Vector b = af.translation;
              for (auto& row : m) {
                for (auto& x : row) x = residue_lift(x);
              }
              for (auto& x : b) x = residue_lift(x);
              if (!determinant(af.matrix).is_unit()) {
                fail(ErrorKind::DegenerateReduction, "affine determinant is not a unit");
              }
              return Factor{AffineAuto::make(std::move(m), std::move(b)), f.inverted};
            },
        },
        f.body);
  };
  std::vector<Factor> factors, conj;
  for (const auto& f : w.factors()) factors.push_back(reduce_factor(f));
  for (const auto& f : w.conjugator()) conj.push_back(reduce_factor(f));
  return AutoWord(w.spec(), w.dimension(), std::move(factors), std::move(conj));
}

std::string describe(const Factor& f) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const HenonFactor& h) { os << "henon(a=" << h.a.to_string() << ", p=" << h.poly.to_string() << ")"; },
                 [&](const TriangularAuto& t) { os << "triangular(r=" << t.dimension() << ")"; },
                 [&](const AffineAuto& a) { os << "affine(r=" << a.dimension() << ")"; },
             },
             f.body);
  if (f.inverted) os << "^-1";
  return os.str();
}

}  // namespace padyn
