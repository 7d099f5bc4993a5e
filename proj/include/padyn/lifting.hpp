#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "padyn/linalg.hpp"
#include "padyn/poly.hpp"

namespace padyn {

/// Unique root x = r (mod p) of g, refined by Newton's method to precision N.
/// NotASimpleRoot unless g(r) = 0 and g'(r) != 0 in the residue field.
PadicElement hensel_lift_root(const UniPoly& g, const ResidueElement& r);

/// Values and Jacobian of a map K^n -> K^n at a point.
using NewtonSystem = std::function<std::pair<Vector, Matrix>(const Vector&)>;

/// Newton iteration from `start` until every component of the system vanishes
/// at working precision. The caller guarantees a unit Jacobian determinant at
/// `start`; NoConvergence after `max_steps` iterations.
Vector newton_refine(const NewtonSystem& system, Vector start, int max_steps = 0);

/// Unique point P = P0 (mod p) with G(P) = 0 at precision N.
Vector newton_lift_system(std::span<const MultiPoly> system, std::span<const ResidueElement> start);

}  // namespace padyn
