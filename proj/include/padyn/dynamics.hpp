#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "padyn/map_format.hpp"
#include "padyn/word.hpp"

namespace padyn {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// The permutation induced by an integral word with invertible reduction on
/// (O/p^k)^r, with points numbered 0 .. p^(f k r) - 1.
class LevelMap {
 public:
  LevelMap(const AutoWord& w, unsigned level);
  ~LevelMap();
  LevelMap(LevelMap&&) noexcept;
  LevelMap& operator=(LevelMap&&) noexcept;

  unsigned level() const { return level_; }
  unsigned dimension() const { return dimension_; }
  /// Number of points; saturates at UINT64_MAX.
  std::uint64_t size() const { return size_; }

  std::uint64_t operator()(std::uint64_t index) const;
  std::vector<Coeffs> decode(std::uint64_t index) const;
  std::uint64_t encode(const std::vector<Coeffs>& point) const;
  /// Canonical lift of a point to O^r.
  Vector lift(std::uint64_t index) const;

 private:
  struct Impl;
  Impl* impl_;
  unsigned level_;
  unsigned dimension_;
  std::uint64_t size_;
};

struct CycleStructure {
  unsigned level = 0;
  unsigned dimension = 0;
  std::map<std::uint64_t, std::uint64_t> counts;  // length -> number of cycles

  std::uint64_t total_points() const;
  std::string to_csv() const;
};

/// Calls visit(first point index, cycle length) once per cycle, in order of
/// the smallest index on each cycle. BudgetExceeded above the budget.
void for_each_cycle(const LevelMap& map, std::uint64_t budget,
                    const std::function<void(std::uint64_t, std::uint64_t)>& visit);

CycleStructure permutation_cycles(const AutoWord& w, unsigned level, std::uint64_t budget = kDefaultBudget);

/// Least n <= max_iter with w^n(P) = P at working precision.
std::optional<std::uint64_t> detect_period(const AutoWord& w, const Vector& point, std::uint64_t max_iter);

struct PeriodicPointRecord {
  Vector point;
  std::uint64_t period = 0;
  bool certified = false;
  std::uint64_t residue_cycle_length = 0;
  unsigned level = 1;
  /// "newton" (Hensel certificate; the point is known to its uniqueness
  /// radius), "exact" (the integer lift is periodic over Q) or "triangular"
  /// (coordinatewise solve).
  std::string method;
  /// Small rational form of the point, set by the reports when that rational
  /// point is periodic over Q with the same period.
  std::optional<std::vector<std::string>> rational;
};

/// Lift of a point on a residue cycle of length n at the given level.
/// SingularJacobian when neither a Hensel certificate nor the exact check
/// succeeds, or when a smaller period cannot be ruled in or out.
PeriodicPointRecord lift_periodic(const AutoWord& w, const Vector& start, std::uint64_t n, unsigned level = 1);

/// All certified lifts found for one residue cycle; triangular words use the
/// coordinatewise solver, other words lift_periodic. Empty when uncertified.
std::vector<PeriodicPointRecord> lift_residue_cycle(const AutoWord& w, const Vector& start, std::uint64_t n,
                                                    unsigned level = 1);

/// Records of equal period whose points lie on one orbit of w.
bool on_same_orbit(const AutoWord& w, const PeriodicPointRecord& a, const PeriodicPointRecord& b);

struct UncertifiedCycle {
  unsigned level;
  std::uint64_t length;
  Vector start;
};

struct PeriodicPoints {
  std::vector<PeriodicPointRecord> records;
  std::vector<UncertifiedCycle> uncertified;

  std::string to_json() const;
};

/// One lift attempt per cycle of length <= n_max at the given level.
PeriodicPoints enumerate_periodic_points(const AutoWord& w, std::uint64_t n_max, unsigned level = 1,
                                         std::uint64_t budget = kDefaultBudget);

struct LevelSummary {
  unsigned level = 0;
  CycleStructure cycles;
  std::set<std::uint64_t> certified_periods;
  std::uint64_t max_lifted_period = 0;
};

struct BoundReport {
  FieldSpec spec;
  std::string word;
  std::string digest;
  std::vector<unsigned> levels;
  std::vector<LevelSummary> per_level;
  std::uint64_t m_empirical = 0;
  bool stabilized = false;
  bool no_periodic_points_certified = true;
  std::vector<PeriodicPointRecord> records;
  std::vector<UncertifiedCycle> uncertified_cycles;

  std::string to_json() const;
};

/// Lifts every cycle at every level. stabilized means the certified period
/// spectra of the two highest levels agree.
BoundReport empirical_period_bound(const AutoWord& w, const std::vector<unsigned>& levels,
                                   std::uint64_t budget = kDefaultBudget);

struct TriangularReport {
  std::set<std::uint64_t> realized;
  std::uint64_t mu_bound = 1;
  /// Least e with every realized period dividing mu_bound * p^e.
  unsigned exponent = 0;
  std::vector<std::string> findings;
  std::vector<PeriodicPointRecord> records;

  std::string to_json() const;
};

TriangularReport triangular_periods(const AutoWord& w, std::uint64_t n_max, unsigned level = 1,
                                    std::uint64_t budget = kDefaultBudget);

/// lcm of the orders of those diagonal coefficients of a triangular word that
/// are roots of unity.
std::uint64_t triangular_mu_bound(const AutoWord& w);

struct TransportReport {
  bool holds = false;
  bool spectra_equal = false;
  std::set<std::uint64_t> word_periods;
  std::set<std::uint64_t> core_periods;
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

/// For w = f^-1 phi f: each certified record P of w has f(P) phi-periodic of
/// the same period, and the level-1 cycle spectra of w and phi coincide.
TransportReport conjugation_transport(const AutoWord& w, std::size_t samples, std::uint64_t n_max = 8);

struct Certificate {
  std::uint64_t prime = 0;
  std::vector<std::pair<std::uint64_t, std::string>> rejected;  // prime, reason
  BoundReport report;
  std::string statement;
  struct PointCheck {
    std::vector<std::string> point;
    std::optional<std::uint64_t> period;
    bool within_bound = false;
  };
  std::vector<PointCheck> rational_points;
  /// Certified records whose coordinates reconstruct to small rationals.
  std::vector<std::pair<std::vector<std::string>, std::uint64_t>> rational_candidates;

  std::string to_json() const;
};

/// First listed prime where the map is integral with a special reduction;
/// NoGoodPrime if none, NotStabilized if the bound does not stabilize.
Certificate certify_rational(const MapDescription& desc, const std::vector<std::uint64_t>& primes,
                             const std::vector<unsigned>& levels, std::uint64_t budget = kDefaultBudget);

/// Short hex digest of the canonical description of a word.
std::string word_digest(const AutoWord& w);

}  // namespace padyn
