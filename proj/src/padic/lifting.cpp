#include "padyn/lifting.hpp"

#include <algorithm>

#include "padyn/error.hpp"

namespace padyn {

namespace {

bool all_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const PadicElement& x) { return x.is_zero(); });
}

}  // namespace

PadicElement hensel_lift_root(const UniPoly& g, const ResidueElement& r) {
  FieldSpec spec = g.spec();
  for (const auto& c : g.coeffs()) {
    if (!c.is_integral()) fail(ErrorKind::NonIntegralCoefficient, "Hensel lifting needs g over O");
  }
  UniPoly dg = g.derivative();
  PadicElement x = PadicElement::from_residue(r);
  if (!reduce_to_residue(g(x)).is_zero()) {
    fail(ErrorKind::NotASimpleRoot, r.to_string() + " is not a root of g modulo p");
  }
  if (reduce_to_residue(dg(x)).is_zero()) {
    fail(ErrorKind::NotASimpleRoot, r.to_string() + " is a multiple root of g modulo p");
  }
  const int max_steps = 2 * static_cast<int>(spec.precision()) + 4;
  for (int i = 0; i < max_steps; ++i) {
    PadicElement value = g(x);
    if (value.is_zero()) return x;
    x -= value / dg(x);
  }
  fail(ErrorKind::NoConvergence, "Hensel iteration did not converge");
}

Vector newton_refine(const NewtonSystem& system, Vector x, int max_steps) {
  if (x.empty()) return x;
  if (max_steps <= 0) max_steps = 2 * static_cast<int>(x.front().spec().precision()) + 4;
  for (int i = 0; i < max_steps; ++i) {
    auto [value, jac] = system(x);
    if (all_zero(value)) return x;
    Vector step;
    try {
      step = solve(std::move(jac), std::move(value));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DivisionByZero) throw;
      fail(ErrorKind::SingularJacobian, "Jacobian became singular during Newton iteration");
    }
    x = x - step;
  }
  fail(ErrorKind::NoConvergence, "Newton iteration did not converge");
}

Vector newton_lift_system(std::span<const MultiPoly> system, std::span<const ResidueElement> start) {
  const std::size_t n = system.size();
  if (n == 0 || start.size() != n) fail(ErrorKind::InvalidArgument, "system must be square");
  for (const auto& g : system) {
    if (g.nvars() != n) fail(ErrorKind::InvalidArgument, "system must be square");
    if (!g.is_integral()) fail(ErrorKind::NonIntegralCoefficient, "Newton lifting needs G over O");
  }
  std::vector<std::vector<MultiPoly>> partials(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) partials[i].push_back(system[i].derivative(j));
  }
  auto eval = [&](const Vector& x) {
    Vector value;
    Matrix jac(n);
    for (std::size_t i = 0; i < n; ++i) {
      value.push_back(system[i](x));
      for (std::size_t j = 0; j < n; ++j) jac[i].push_back(partials[i][j](x));
    }
    return std::make_pair(value, jac);
  };
  Vector x;
  for (const auto& r : start) x.push_back(PadicElement::from_residue(r));
  auto [value, jac] = eval(x);
  for (const auto& v : value) {
    if (!reduce_to_residue(v).is_zero()) {
      fail(ErrorKind::ResidueNotASolution, "starting point does not solve the system modulo p");
    }
  }
  if (reduce_to_residue(determinant(jac)).is_zero()) {
    fail(ErrorKind::SingularJacobian, "Jacobian is singular modulo p at the starting point");
  }
  return newton_refine(eval, std::move(x));
}

}  // namespace padyn
