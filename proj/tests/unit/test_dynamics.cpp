#include <fstream>
#include <sstream>

#include <json.hpp>

#include "doctest.h"
#include "oracles.hpp"
#include "padyn/dynamics.hpp"
#include "padyn/error.hpp"
#include "padyn/map_format.hpp"

using namespace padyn;

namespace {

PadicElement num(FieldSpec k, std::int64_t v) { return PadicElement::from_int(k, v); }

Vector point(FieldSpec k, std::int64_t x, std::int64_t y) { return {num(k, x), num(k, y)}; }

// (x^2 + c - a y, x)
AutoWord henon_word(FieldSpec k, std::int64_t c, std::int64_t a = 1) {
  return AutoWord(k, 2, {Factor{HenonFactor::make(num(k, a), UniPoly(k, {num(k, c), num(k, 0), num(k, 1)}))}});
}

std::vector<MapDescription> load(const std::string& name) {
  std::ifstream in(std::string(PADYN_DATA_DIR) + "/maps/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_maps(ss.str());
}

AutoWord load_word(const std::string& name) { return build_word(load(name).front()); }

std::int64_t ipow(std::int64_t p, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

int point_precision(const Vector& v) {
  int r = static_cast<int>(v.front().spec().precision());
  for (const auto& x : v) r = std::min(r, x.absolute_precision());
  return r;
}

std::int64_t as_integer(const PadicElement& x, int k) { return static_cast<std::int64_t>(x.reduce(k)[0]); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("cycle structures match brute force") {
  for (std::int64_t c : {0, 1, 2}) {
    for (int k : {1, 2}) {
      FieldSpec q3 = FieldSpec::create(3, 10);
      auto got = permutation_cycles(henon_word(q3, c), k).counts;
      auto want = oracle::cycle_histogram(oracle::henon_mod(c, 1, ipow(3, k)), ipow(3, k));
      CHECK(got == want);
    }
  }
  FieldSpec q3 = FieldSpec::create(3, 10);
  CHECK(permutation_cycles(henon_word(q3, 0), 3).counts ==
        oracle::cycle_histogram(oracle::henon_mod(0, 1, 27), 27));
  CHECK(permutation_cycles(henon_word(q3, 0), 1).counts == std::map<std::uint64_t, std::uint64_t>{{1, 2}, {7, 1}});
  CHECK(permutation_cycles(henon_word(q3, 1), 1).counts ==
        std::map<std::uint64_t, std::uint64_t>{{1, 1}, {3, 1}, {5, 1}});
  CHECK(permutation_cycles(henon_word(q3, 2), 1).counts ==
        std::map<std::uint64_t, std::uint64_t>{{2, 1}, {3, 1}, {4, 1}});

  // Non-unit Jacobian a = 2 still permutes.
  CHECK(permutation_cycles(henon_word(q3, 1, 2), 2).counts ==
        oracle::cycle_histogram(oracle::henon_mod(1, 2, 9), 9));

  AutoWord tri = load_word("triangular_q5.json");
  for (int k : {1, 2}) {
    const std::int64_t m = ipow(5, k);
    oracle::Map2 f = [m](oracle::Point2 p) {
      return oracle::Point2{oracle::mod(-p.first + p.second * p.second, m), oracle::mod(1 - p.second, m)};
    };
    CHECK(permutation_cycles(tri, k).counts == oracle::cycle_histogram(f, m));
  }
  CHECK(permutation_cycles(tri, 1).counts == std::map<std::uint64_t, std::uint64_t>{{1, 1}, {2, 2}, {10, 2}});
}

TEST_CASE("cycle csv and budget") {
  FieldSpec q3 = FieldSpec::create(3, 10);
  CHECK(permutation_cycles(henon_word(q3, 0), 1).to_csv() == "# level=1\nlength,count\n1,2\n7,1\n");
  CHECK(permutation_cycles(henon_word(q3, 0), 2).total_points() == 81);
  CHECK(kind_of([&] { permutation_cycles(henon_word(q3, 0), 3, 100); }) == ErrorKind::BudgetExceeded);
  FieldSpec bad = FieldSpec::create(3, 10);
  AutoWord nonintegral(bad, 2,
                       {Factor{HenonFactor::make(PadicElement::from_rational(bad, 1, 3),
                                                 UniPoly(bad, {num(bad, 0), num(bad, 0), num(bad, 1)}))}});
  CHECK(kind_of([&] { LevelMap m(nonintegral, 1); }) == ErrorKind::NonIntegralCoefficient);
}

TEST_CASE("level maps are compatible with reduction") {
  FieldSpec q3 = FieldSpec::create(3, 10);
  for (std::int64_t c : {0, 2}) {
    AutoWord g = henon_word(q3, c);
    LevelMap lo(g, 1), hi(g, 2);
    auto down = [&](std::uint64_t i) {
      auto pt = hi.decode(i);
      for (auto& x : pt) x[0] %= 3;
      return lo.encode(pt);
    };
    auto orbit = [](const LevelMap& m, std::uint64_t s) {
      std::uint64_t n = 0, cur = s;
      do {
        cur = m(cur);
        ++n;
      } while (cur != s);
      return n;
    };
    for (std::uint64_t i = 0; i < hi.size(); ++i) {
      CHECK(lo(down(i)) == down(hi(i)));
      CHECK(orbit(hi, i) % orbit(lo, down(i)) == 0);
    }
  }
}

TEST_CASE("certified Henon records are genuine periodic points") {
  const oracle::BigMod R(3, 36);
  for (std::int64_t c : {0, 1, 2}) {
    FieldSpec q3 = FieldSpec::create(3, 10);
    BoundReport b = empirical_period_bound(henon_word(q3, c), {1, 2, 3});
    REQUIRE(!b.records.empty());
    for (const auto& r : b.records) {
      CAPTURE(c);
      CAPTURE(r.period);
      const int prec = point_precision(r.point);
      REQUIRE(prec >= 1);
      oracle::Point2 s{as_integer(r.point[0], prec), as_integer(r.point[1], prec)};
      auto refined = oracle::henon_periodic_refine(R, c, 1, s, r.period);
      REQUIRE(refined.has_value());
      CHECK(oracle::mod(refined->first - s.first, ipow(3, prec)) == 0);
      CHECK(oracle::mod(refined->second - s.second, ipow(3, prec)) == 0);
      CHECK(oracle::henon_period_mod(R, c, 1, *refined, 24, r.period) == r.period);
    }
  }
}

TEST_CASE("empirical bounds stabilize for the quadratic family") {
  FieldSpec q3 = FieldSpec::create(3, 10);
  const std::map<std::int64_t, std::pair<std::uint64_t, std::set<std::uint64_t>>> want = {
      {0, {7, {1, 7}}}, {1, {5, {1, 3, 5}}}, {2, {9, {2, 4, 9}}}};
  for (const auto& [c, mp] : want) {
    BoundReport b = empirical_period_bound(henon_word(q3, c), {1, 2, 3, 4});
    CAPTURE(c);
    CHECK(b.stabilized);
    CHECK(b.m_empirical == mp.first);
    CHECK(b.per_level.back().certified_periods == mp.second);
    for (std::size_t i = 1; i < b.per_level.size(); ++i) {
      for (auto n : b.per_level[i - 1].certified_periods) CHECK(b.per_level[i].certified_periods.count(n));
    }
  }
  BoundReport one = empirical_period_bound(henon_word(q3, 0), {1});
  CHECK_FALSE(one.stabilized);
}

TEST_CASE("cycles that do not lift stay uncertified") {
  FieldSpec q3 = FieldSpec::create(3, 10);
  AutoWord g = henon_word(q3, 0);
  // g has no points of period 2 or 4 over Q_3; the residue cycles of those
  // lengths near the fixed points must not be certified.
  for (unsigned level : {3u, 4u}) {
    LevelMap m(g, level);
    for_each_cycle(m, kDefaultBudget, [&](std::uint64_t s, std::uint64_t len) {
      if (len != 2 && len != 4) return;
      CHECK(lift_residue_cycle(g, m.lift(s), len, level).empty());
    });
  }
  CHECK(kind_of([&] { lift_periodic(g, point(q3, 27, 0), 4, 4); }) == ErrorKind::SingularJacobian);
  CHECK(kind_of([&] { lift_periodic(g, point(q3, 1, 0), 1); }) == ErrorKind::ResidueNotASolution);
  CHECK(kind_of([&] { lift_periodic(g, point(q3, 0, 0), 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("lifting known points") {
  FieldSpec q3 = FieldSpec::create(3, 10);
  AutoWord g = henon_word(q3, 0);
  PeriodicPointRecord r = lift_periodic(g, point(q3, 2, 2), 1);
  CHECK(r.certified);
  CHECK(r.method == "newton");
  CHECK(r.period == 1);
  CHECK(r.point[0] == num(q3, 2));
  CHECK(r.point[1] == num(q3, 2));

  // Period 7 from the level-1 seven-cycle through (1, 0).
  PeriodicPointRecord r7 = lift_periodic(g, point(q3, 1, 0), 7);
  CHECK(r7.period == 7);
  CHECK(detect_period(g, r7.point, 20) == std::optional<std::uint64_t>(7));
  PeriodicPointRecord moved = r7;
  moved.point = padyn::apply(g, r7.point);
  CHECK(on_same_orbit(g, r7, moved));
  CHECK_FALSE(on_same_orbit(g, r7, r));
  CHECK(detect_period(g, point(q3, 1, 0), 3) == std::nullopt);

  auto pts = enumerate_periodic_points(g, 4);
  CHECK(pts.records.size() == 2);
  for (const auto& p : pts.records) CHECK(p.period == 1);
}

TEST_CASE("exact records for the linear involution") {
  AutoWord inv = load_word("involution_q3.json");
  BoundReport b = empirical_period_bound(inv, {1, 2});
  CHECK(b.m_empirical == 2);
  CHECK(b.stabilized);
  CHECK(b.uncertified_cycles.empty());
  // Points of (Z/9)^2: one fixed, the rest in 2-cycles.
  CHECK(b.per_level[1].cycles.counts == std::map<std::uint64_t, std::uint64_t>{{1, 1}, {2, 40}});
  for (const auto& r : b.records) {
    CHECK(padyn::apply(inv, padyn::apply(inv, r.point)) == r.point);
    CHECK((r.method == "exact" || r.method == "newton"));
    CHECK(r.rational.has_value());
  }
}

TEST_CASE("triangular periods") {
  AutoWord tri = load_word("triangular_q5.json");
  CHECK(triangular_mu_bound(tri) == 2);
  TriangularReport t = triangular_periods(tri, 10);
  CHECK(t.realized == std::set<std::uint64_t>{1, 2});
  CHECK(t.exponent == 0);
  bool fixed = false;
  for (const auto& r : t.records) {
    REQUIRE(r.rational.has_value());
    CHECK((*r.rational)[1] == "1/2");
    if (r.period == 1) {
      fixed = true;
      CHECK((*r.rational)[0] == "1/8");
    }
    CHECK(t.mu_bound % r.period == 0);
  }
  CHECK(fixed);

  AutoWord lin = load_word("triangular_linear_q5.json");
  CHECK(triangular_mu_bound(lin) == 1);
  TriangularReport tl = triangular_periods(lin, 8);
  CHECK(tl.realized == std::set<std::uint64_t>{1});
  REQUIRE(tl.records.size() == 1);
  CHECK(*tl.records[0].rational == std::vector<std::string>{"-1", "-1/2"});

  AutoWord r3 = load_word("triangular_r3_q3.json");
  TriangularReport t3 = triangular_periods(r3, 6);
  CHECK(t3.realized == std::set<std::uint64_t>{1, 2});
  CHECK(t3.mu_bound == 2);
  for (const auto& r : t3.records) {
    REQUIRE(r.rational.has_value());
    CHECK((*r.rational)[1] == "1/8");
    CHECK((*r.rational)[2] == "1/2");
    if (r.period == 1) CHECK((*r.rational)[0] == "1/32");
  }

  FieldSpec q3 = FieldSpec::create(3, 10);
  CHECK(kind_of([&] { triangular_periods(henon_word(q3, 0), 4); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("translations have no periodic points") {
  AutoWord t = load_word("translation_q5.json");
  BoundReport b = empirical_period_bound(t, {1, 2});
  CHECK(b.no_periodic_points_certified);
  CHECK(b.m_empirical == 0);
  CHECK(b.per_level[0].cycles.counts == std::map<std::uint64_t, std::uint64_t>{{5, 5}});
  CHECK(b.per_level[1].cycles.counts == std::map<std::uint64_t, std::uint64_t>{{25, 25}});
}

TEST_CASE("conjugation transports periodic points") {
  AutoWord w = load_word("conjugated_q3.json");
  TransportReport t = conjugation_transport(w, 10);
  CHECK(t.holds);
  CHECK(t.spectra_equal);
  CHECK(t.failures.empty());
  CHECK(t.checked > 0);
  CHECK(t.word_periods == std::set<std::uint64_t>{1, 7});
  CHECK(t.word_periods == t.core_periods);
}

TEST_CASE("rational certificates") {
  auto desc = load("henon_q3.json").front();
  Certificate cert = certify_rational(desc, {3}, {1, 2, 3});
  CHECK(cert.prime == 3);
  CHECK(cert.report.m_empirical == 7);
  REQUIRE(cert.rational_points.size() == 2);
  for (const auto& pc : cert.rational_points) {
    CHECK(pc.period == std::optional<std::uint64_t>(1));
    CHECK(pc.within_bound);
  }
  CHECK(cert.rational_candidates.size() == 2);
  auto j = nlohmann::json::parse(cert.to_json());
  CHECK(j["prime"] == 3);

  auto third = load("henon_a_third.json").front();
  CHECK(kind_of([&] { certify_rational(third, {3}, {1, 2}); }) == ErrorKind::NoGoodPrime);
  Certificate c5 = certify_rational(third, {3, 5}, {1, 2});
  CHECK(c5.prime == 5);
  REQUIRE(c5.rejected.size() == 1);
  CHECK(c5.rejected[0].first == 3);
  // (4/3, 4/3) is fixed: 16/9 - 4/9 = 4/3.
  REQUIRE(c5.rational_points.size() == 2);
  CHECK(c5.rational_points[1].period == std::optional<std::uint64_t>(1));

  CHECK(kind_of([&] { certify_rational(desc, {3}, {1}); }) == ErrorKind::NotStabilized);
  CHECK(kind_of([&] { certify_rational(desc, {}, {1, 2}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("word digests") {
  FieldSpec q3 = FieldSpec::create(3, 10);
  CHECK(word_digest(henon_word(q3, 0)) == word_digest(henon_word(q3, 0)));
  CHECK(word_digest(henon_word(q3, 0)) != word_digest(henon_word(q3, 1)));
  CHECK(word_digest(henon_word(q3, 0)).size() == 16);
}
