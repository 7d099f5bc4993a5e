#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padyn/dynamics.hpp"

namespace padyn::detail {

using RationalPoint = std::vector<std::pair<std::int64_t, std::int64_t>>;

/// Least m <= max_iter with w^m(x) = x computed over Q, reading the
/// coefficients of w back as small rationals. nullopt when there is no such m,
/// the field is not Q_p, a coefficient has no small rational form, or the
/// numbers grow past the bit budget.
std::optional<std::uint64_t> exact_period(const AutoWord& w, const RationalPoint& x, std::uint64_t max_iter);

/// exact_period for the integer lift of the residue of `point` modulo
/// p^level, accepted only when the period divides n.
std::optional<std::uint64_t> exact_period(const AutoWord& w, const Vector& point, unsigned level, std::uint64_t n);

/// The integer lift used above, as a p-adic point.
Vector integer_lift(const Vector& point, unsigned level);

/// Coordinatewise rational reconstruction.
std::optional<RationalPoint> reconstruct_point(const Vector& point);

/// Sets each record's rational form when the reconstructed rational point is
/// periodic over Q with the record's period; clears it otherwise.
void annotate_rational(const AutoWord& w, std::vector<PeriodicPointRecord>& records);

/// Parses "a" or "a/b".
std::optional<std::pair<std::int64_t, std::int64_t>> parse_rational(const std::string& s);

}  // namespace padyn::detail
