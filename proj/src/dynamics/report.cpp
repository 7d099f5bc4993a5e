#include <algorithm>
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "padyn/dynamics.hpp"
#include "padyn/error.hpp"
#include "padyn/locus.hpp"
#include "exact.hpp"

namespace padyn {

namespace {

using json = nlohmann::ordered_json;

json point_json(const Vector& p) {
  json a = json::array();
  for (const auto& x : p) a.push_back(x.to_string());
  return a;
}

json record_json(const PeriodicPointRecord& r) {
  json j;
  j["point"] = point_json(r.point);
  int prec = static_cast<int>(r.point.front().spec().precision());
  for (const auto& x : r.point) prec = std::min(prec, x.absolute_precision());
  j["precision"] = prec;
  if (r.rational) j["rational"] = *r.rational;
  j["period"] = r.period;
  j["certified"] = r.certified;
  j["method"] = r.method;
  j["level"] = r.level;
  j["residue_cycle_length"] = r.residue_cycle_length;
  return j;
}

json field_json(FieldSpec spec) {
  json j;
  j["prime"] = spec.prime();
  j["extension_degree"] = spec.degree();
  j["precision"] = spec.precision();
  return j;
}

json uncertified_json(const std::vector<UncertifiedCycle>& cycles) {
  json unc = json::array();
  for (const auto& u : cycles) {
    unc.push_back(json{{"level", u.level}, {"length", u.length}, {"start", point_json(u.start)}});
  }
  return unc;
}

json report_json(const BoundReport& b) {
  json j;
  j["field"] = field_json(b.spec);
  j["word"] = b.word;
  j["digest"] = b.digest;
  j["levels"] = b.levels;
  json levels = json::array();
  for (const auto& l : b.per_level) {
    json e;
    e["level"] = l.level;
    json cycles = json::array();
    for (const auto& [len, count] : l.cycles.counts) cycles.push_back(json::array({len, count}));
    e["cycles"] = cycles;
    e["certified_periods"] = l.certified_periods;
    e["max_lifted_period"] = l.max_lifted_period;
    levels.push_back(e);
  }
  j["per_level"] = levels;
  j["M_empirical"] = b.m_empirical;
  j["stabilized"] = b.stabilized;
  j["no_periodic_points_certified"] = b.no_periodic_points_certified;
  json recs = json::array();
  for (const auto& r : b.records) recs.push_back(record_json(r));
  j["records"] = recs;
  j["uncertified_cycles"] = uncertified_json(b.uncertified_cycles);
  return j;
}

std::string describe_word_text(const AutoWord& w) {
  std::string s;
  for (const auto& f : w.factors()) s += (s.empty() ? "" : " * ") + describe(f);
  if (s.empty()) s = "identity";
  if (w.has_conjugator()) {
    std::string c;
    for (const auto& f : w.conjugator()) c += (c.empty() ? "" : " * ") + describe(f);
    s += " conjugated by " + c;
  }
  return s;
}

// Image under f of integrality: reduce_word succeeds.
bool has_good_reduction(const AutoWord& w) {
  try {
    (void)reduce_word(w);
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool coefficients_integral(const AutoWord& w) {
  try {
    for (const auto& f : application_sequence(w)) {
      (void)reduce_word(AutoWord(w.spec(), w.dimension(), {f.inverted ? f.inverse() : f}));
    }
  } catch (const Error& e) {
    return e.kind() != ErrorKind::NonIntegralCoefficient;
  }
  return true;
}

}  // namespace

std::string word_digest(const AutoWord& w) {
  const std::string text = serialize_maps({describe_word(w)});
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string BoundReport::to_json() const { return report_json(*this).dump(2) + "\n"; }

BoundReport empirical_period_bound(const AutoWord& w, const std::vector<unsigned>& levels, std::uint64_t budget) {
  if (levels.empty()) fail(ErrorKind::InvalidArgument, "at least one level is required");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 1 || (i && levels[i] <= levels[i - 1])) {
      fail(ErrorKind::InvalidArgument, "levels must be positive and strictly ascending");
    }
  }
  BoundReport b{w.spec(), describe_word_text(w), word_digest(w), levels, {}, 0, false, true, {}, {}};
  for (unsigned level : levels) {
    LevelMap map(w, level);
    LevelSummary s{level, CycleStructure{level, w.dimension(), {}}, {}, 0};
    for_each_cycle(map, budget, [&](std::uint64_t start, std::uint64_t len) {
      ++s.cycles.counts[len];
      Vector p = map.lift(start);
      auto recs = lift_residue_cycle(w, p, len, level);
      if (recs.empty()) b.uncertified_cycles.push_back({level, len, p});
      for (auto& r : recs) {
        s.certified_periods.insert(r.period);
        s.max_lifted_period = std::max(s.max_lifted_period, r.period);
        bool dup = std::any_of(b.records.begin(), b.records.end(),
                               [&](const PeriodicPointRecord& q) { return on_same_orbit(w, q, r); });
        if (!dup) b.records.push_back(std::move(r));
      }
    });
    b.per_level.push_back(std::move(s));
  }
  for (const auto& r : b.records) b.m_empirical = std::max(b.m_empirical, r.period);
  b.no_periodic_points_certified = b.records.empty();
  detail::annotate_rational(w, b.records);
  const std::size_t t = b.per_level.size();
  b.stabilized = t >= 2 && b.per_level[t - 1].certified_periods == b.per_level[t - 2].certified_periods;
  return b;
}

std::string PeriodicPoints::to_json() const {
  json j;
  json recs = json::array();
  for (const auto& r : records) recs.push_back(record_json(r));
  j["records"] = recs;
  j["uncertified_cycles"] = uncertified_json(uncertified);
  return j.dump(2) + "\n";
}

std::string TriangularReport::to_json() const {
  json j;
  j["realized"] = realized;
  j["mu_bound"] = mu_bound;
  j["exponent"] = exponent;
  j["findings"] = findings;
  json recs = json::array();
  for (const auto& r : records) recs.push_back(record_json(r));
  j["records"] = recs;
  return j.dump(2) + "\n";
}

TriangularReport triangular_periods(const AutoWord& w, std::uint64_t n_max, unsigned level, std::uint64_t budget) {
  TriangularReport t;
  t.mu_bound = triangular_mu_bound(w);
  auto pts = enumerate_periodic_points(w, n_max, level, budget);
  t.records = pts.records;
  const std::uint64_t p = w.spec().prime();
  for (const auto& r : pts.records) t.realized.insert(r.period);
  for (std::uint64_t n : t.realized) {
    std::uint64_t rest = n / std::gcd(n, t.mu_bound);
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (rest != 1) {
      t.findings.push_back("period " + std::to_string(n) + " is not a divisor of mu_bound times a power of p");
    } else if (e > 0) {
      t.findings.push_back("period " + std::to_string(n) + " does not divide mu_bound");
    }
    t.exponent = std::max(t.exponent, e);
  }
  for (const auto& u : pts.uncertified) {
    t.findings.push_back("uncertified residue cycle of length " + std::to_string(u.length));
  }
  return t;
}

TransportReport conjugation_transport(const AutoWord& w, std::size_t samples, std::uint64_t n_max) {
  TransportReport t;
  const AutoWord phi = w.core();
  const AutoWord f = w.conjugator_word();
  t.spectra_equal = permutation_cycles(w, 1).counts == permutation_cycles(phi, 1).counts;
  auto pw = enumerate_periodic_points(w, n_max);
  auto pc = enumerate_periodic_points(phi, n_max);
  for (const auto& r : pw.records) t.word_periods.insert(r.period);
  for (const auto& r : pc.records) t.core_periods.insert(r.period);
  for (const auto& r : pw.records) {
    if (t.checked >= samples) break;
    ++t.checked;
    Vector q = padyn::apply(f, r.point);
    auto n = detect_period(phi, q, r.period);
    if (!n || *n != r.period) {
      t.failures.push_back("record of period " + std::to_string(r.period) + " maps to a point of period " +
                           (n ? std::to_string(*n) : std::string("> ") + std::to_string(r.period)));
    }
  }
  t.holds = t.spectra_equal && t.word_periods == t.core_periods && t.failures.empty();
  return t;
}

std::string Certificate::to_json() const {
  json j;
  j["prime"] = prime;
  json rej = json::array();
  for (const auto& [p, why] : rejected) rej.push_back(json{{"prime", p}, {"reason", why}});
  j["rejected"] = rej;
  j["M_empirical"] = report.m_empirical;
  j["statement"] = statement;
  json pts = json::array();
  for (const auto& c : rational_points) {
    json e;
    e["point"] = c.point;
    e["period"] = c.period ? json(*c.period) : json(nullptr);
    e["within_bound"] = c.within_bound;
    pts.push_back(e);
  }
  j["rational_points"] = pts;
  json cands = json::array();
  for (const auto& [pt, period] : rational_candidates) cands.push_back(json{{"point", pt}, {"period", period}});
  j["rational_candidates"] = cands;
  j["report"] = report_json(report);
  return j.dump(2) + "\n";
}

Certificate certify_rational(const MapDescription& desc, const std::vector<std::uint64_t>& primes,
                             const std::vector<unsigned>& levels, std::uint64_t budget) {
  if (primes.empty()) fail(ErrorKind::InvalidArgument, "no candidate primes given");
  std::vector<std::pair<std::uint64_t, std::string>> rejected;
  for (std::uint64_t p : primes) {
    std::optional<AutoWord> w;
    try {
      w = build_word(desc, desc.field(p));
    } catch (const Error& e) {
      rejected.push_back({p, e.what()});
      continue;
    }
    const AutoWord core = w->core();
    const bool core_ok = is_special_henon(core) || (core.is_triangular() && has_good_reduction(core));
    const bool conj_ok = !w->has_conjugator() || has_good_reduction(w->conjugator_word());
    if (!core_ok || !conj_ok) {
      rejected.push_back(
          {p, coefficients_integral(*w) ? "reduction is not special" : "coefficients are not integral"});
      continue;
    }
    Certificate cert{p, rejected, empirical_period_bound(*w, levels, budget), "", {}, {}};
    if (!cert.report.stabilized) {
      fail(ErrorKind::NotStabilized, "certified period spectrum did not stabilize at p = " + std::to_string(p));
    }
    const std::uint64_t M = cert.report.m_empirical;
    cert.statement = "over Q_" + std::to_string(p) + " the certified periods through level " +
                     std::to_string(cert.report.levels.back()) + " are bounded by " + std::to_string(M) +
                     " and unchanged between the last two levels; this is an empirical bound, not a proof";
    for (const auto& pt : desc.rational_points) {
      std::optional<std::uint64_t> period;
      detail::RationalPoint q;
      for (const auto& s : pt) {
        if (auto v = detail::parse_rational(s)) q.push_back(*v);
      }
      if (q.size() == pt.size()) period = detail::exact_period(*w, q, std::max<std::uint64_t>(M, 1));
      Certificate::PointCheck c{pt, period, false};
      c.within_bound = c.period.has_value() && *c.period <= M;
      cert.rational_points.push_back(std::move(c));
    }
    for (const auto& r : cert.report.records) {
      if (r.rational) cert.rational_candidates.push_back({*r.rational, r.period});
    }
    return cert;
  }
  fail(ErrorKind::NoGoodPrime, "no listed prime gives a special reduction");
}

}  // namespace padyn
