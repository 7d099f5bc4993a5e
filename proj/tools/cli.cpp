#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "padyn/dynamics.hpp"
#include "padyn/error.hpp"
#include "padyn/locus.hpp"
#include "padyn/map_format.hpp"

namespace padyn::cli {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string input;
  std::vector<unsigned> levels{1, 2, 3};
  std::uint64_t n_max = 4;
  std::optional<unsigned> precision;
  std::uint64_t budget = kDefaultBudget;
  std::string format = "json";
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> primes;
};

std::vector<MapDescription> load_maps(const RunConfig& cfg) {
  std::ifstream in(cfg.input);
  if (!in) fail(ErrorKind::ParseError, "cannot read " + cfg.input);
  std::stringstream ss;
  ss << in.rdbuf();
  auto maps = parse_maps(ss.str());
  if (cfg.precision) {
    for (auto& m : maps) m.precision = *cfg.precision;
  }
  return maps;
}

// One document for one map, an array for several.
void emit(std::ostream& out, const std::vector<json>& docs) {
  if (docs.size() == 1) {
    out << docs.front().dump(2) << "\n";
  } else {
    out << json(docs).dump(2) << "\n";
  }
}

json strings_json(const ProjectivePointSet& s) { return json(s.to_strings()); }

template <class F>
json attempt(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return json{{"error", std::string(to_string(e.kind()))}};
  }
}

int total_degree(const AutoWord& w) {
  int d = 0;
  for (const auto& c : compose_symbolic(w)) d = std::max(d, c.total_degree());
  return d;
}

json check_one(const AutoWord& w, const RunConfig& cfg) {
  json j;
  j["dimension"] = w.dimension();
  std::string text;
  for (const auto& f : w.factors()) text += (text.empty() ? "" : " * ") + describe(f);
  j["word"] = text.empty() ? "identity" : text;
  j["degree"] = attempt([&] { return json(total_degree(w)); });
  if (w.dimension() != 2) {
    j["loci"] = nullptr;
    j["regular"] = nullptr;
    j["special_henon"] = false;
    j["iterate_loci_stable"] = nullptr;
    return j;
  }
  const AutoWord inv = inverse(w);
  json loci;
  for (auto [name, where] : {std::pair{"generic", LocusField::Generic}, std::pair{"special", LocusField::Special}}) {
    loci[name] = json{{"map", attempt([&] { return strings_json(indeterminacy_locus(w, where)); })},
                      {"inverse", attempt([&] { return strings_json(indeterminacy_locus(inv, where)); })}};
  }
  j["loci"] = loci;
  const bool regular = is_regular(w);
  j["regular"] = regular;
  j["special_henon"] = is_special_henon(w);
  if (regular) {
    j["iterate_loci_stable"] = attempt([&] { return json(check_iterate_locus(w, static_cast<unsigned>(cfg.n_max))); });
  } else {
    j["iterate_loci_stable"] = nullptr;
  }
  j["iterate_n_max"] = cfg.n_max;
  return j;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  std::vector<json> docs;
  for (const auto& m : load_maps(cfg)) docs.push_back(check_one(build_word(m), cfg));
  emit(out, docs);
  return kOk;
}

int cmd_cycles(const RunConfig& cfg, std::ostream& out) {
  const auto maps = load_maps(cfg);
  std::vector<json> docs;
  std::string csv;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const AutoWord w = build_word(maps[i]);
    json levels = json::array();
    for (unsigned k : cfg.levels) {
      const CycleStructure cs = permutation_cycles(w, k, cfg.budget);
      if (maps.size() > 1) csv += "# map=" + std::to_string(i) + "\n";
      csv += cs.to_csv();
      json cycles = json::array();
      for (const auto& [len, count] : cs.counts) cycles.push_back(json::array({len, count}));
      levels.push_back(json{{"level", k}, {"cycles", cycles}});
    }
    docs.push_back(json{{"levels", levels}});
  }
  if (cfg.format == "csv") {
    out << csv;
  } else {
    emit(out, docs);
  }
  return kOk;
}

int cmd_periods(const RunConfig& cfg, std::ostream& out) {
  std::vector<json> docs;
  for (const auto& m : load_maps(cfg)) {
    const AutoWord w = build_word(m);
    const unsigned level = cfg.levels.front();
    if (w.is_triangular() && !w.has_conjugator()) {
      docs.push_back(json::parse(triangular_periods(w, cfg.n_max, level, cfg.budget).to_json()));
    } else {
      docs.push_back(json::parse(enumerate_periodic_points(w, cfg.n_max, level, cfg.budget).to_json()));
    }
  }
  emit(out, docs);
  return kOk;
}

int cmd_bound(const RunConfig& cfg, std::ostream& out) {
  std::vector<json> docs;
  bool stable = true;
  for (const auto& m : load_maps(cfg)) {
    const BoundReport b = empirical_period_bound(build_word(m), cfg.levels, cfg.budget);
    stable = stable && b.stabilized;
    docs.push_back(json::parse(b.to_json()));
  }
  emit(out, docs);
  return stable ? kOk : kNotStabilized;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
  std::vector<json> docs;
  for (const auto& m : load_maps(cfg)) {
    std::vector<std::uint64_t> primes = cfg.primes;
    if (primes.empty()) primes.push_back(m.prime);
    docs.push_back(json::parse(certify_rational(m, primes, cfg.levels, cfg.budget).to_json()));
  }
  emit(out, docs);
  return kOk;
}

// Seeded property checks on random words over Q_3 and Q_5.
class SelfTest {
 public:
  SelfTest(std::uint64_t seed, std::ostream& out) : rng_(seed), out_(out) {}

  int run() {
    round_trip();
    henon_loci();
    cycle_totality();
    tower();
    out_ << "selftest: " << passed_ << " passed, " << failed_ << " failed\n";
    return failed_ == 0 ? kOk : kFailure;
  }

 private:
  PadicElement scalar(FieldSpec k, bool unit) {
    std::uniform_int_distribution<std::int64_t> d(-40, 40);
    for (;;) {
      std::int64_t v = d(rng_);
      if (v == 0) continue;
      if (unit && v % static_cast<std::int64_t>(k.prime()) == 0) continue;
      return PadicElement::from_int(k, v);
    }
  }

  Factor henon(FieldSpec k) {
    std::uniform_int_distribution<int> deg(2, 3);
    std::vector<PadicElement> c;
    const int d = deg(rng_);
    for (int i = 0; i < d; ++i) c.push_back(scalar(k, false));
    c.push_back(PadicElement::one(k));
    return Factor{HenonFactor::make(scalar(k, true), UniPoly(k, std::move(c)))};
  }

  Factor affine(FieldSpec k) {
    for (;;) {
      Matrix m{{scalar(k, false), scalar(k, false)}, {scalar(k, false), scalar(k, false)}};
      if (!determinant(m).is_unit()) continue;
      return Factor{AffineAuto::make(m, {scalar(k, false), scalar(k, false)})};
    }
  }

  AutoWord word(FieldSpec k) {
    std::uniform_int_distribution<int> len(1, 3), kind(0, 2), flip(0, 1);
    std::vector<Factor> fs;
    const int n = len(rng_);
    for (int i = 0; i < n; ++i) {
      Factor f = kind(rng_) == 0 ? affine(k) : henon(k);
      if (flip(rng_)) f = f.inverse();
      fs.push_back(f);
    }
    return AutoWord(k, 2, fs);
  }

  void report(const std::string& name, bool ok, const std::string& detail = "") {
    (ok ? passed_ : failed_)++;
    if (!ok) out_ << "FAIL " << name << (detail.empty() ? "" : ": " + detail) << "\n";
  }

  void round_trip() {
    FieldSpec k = FieldSpec::create(5, 12);
    bool ok = true;
    for (int t = 0; t < 20; ++t) {
      AutoWord w = word(k);
      AutoWord inv = inverse(w);
      for (int i = 0; i < 20; ++i) {
        Vector p{scalar(k, false), scalar(k, false)};
        ok = ok && padyn::apply(inv, padyn::apply(w, p)) == p;
      }
    }
    report("inverse round trip", ok);
  }

  void henon_loci() {
    FieldSpec k = FieldSpec::create(3, 10);
    const ProjectivePoint top{PadicElement::zero(k), PadicElement::one(k)};
    const ProjectivePoint side{PadicElement::one(k), PadicElement::zero(k)};
    bool ok = true;
    for (int t = 0; t < 10; ++t) {
      std::vector<Factor> fs{henon(k)};
      if (t % 2) fs.push_back(henon(k));
      AutoWord w(k, 2, fs);
      auto z = indeterminacy_locus(w);
      auto zi = indeterminacy_locus(inverse(w));
      ok = ok && z.points.size() == 1 && z.contains(top) && zi.points.size() == 1 && zi.contains(side);
      ok = ok && is_regular(w) && is_special_henon(w) == henon_coefficient_criterion(w) && is_special_henon(w);
    }
    report("Henon loci", ok);
  }

  void cycle_totality() {
    FieldSpec k = FieldSpec::create(3, 10);
    bool ok = true;
    for (int t = 0; t < 5; ++t) {
      AutoWord w = word(k);
      for (unsigned level : {1u, 2u}) ok = ok && permutation_cycles(w, level).total_points() == (level == 1 ? 9u : 81u);
    }
    report("cycle totality", ok);
  }

  void tower() {
    FieldSpec k = FieldSpec::create(3, 10);
    AutoWord w(k, 2, {henon(k)});
    LevelMap lo(w, 1), hi(w, 2);
    auto orbit = [](const LevelMap& m, std::uint64_t s) {
      std::uint64_t n = 0, cur = s;
      do {
        cur = m(cur);
        ++n;
      } while (cur != s);
      return n;
    };
    bool ok = true;
    for (std::uint64_t i = 0; i < hi.size(); ++i) {
      auto pt = hi.decode(i);
      for (auto& c : pt) c[0] %= 3;
      ok = ok && orbit(hi, i) % orbit(lo, lo.encode(pt)) == 0;
    }
    report("tower divisibility", ok);
  }

  std::mt19937_64 rng_;
  std::ostream& out_;
  int passed_ = 0;
  int failed_ = 0;
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
      return kUsage;
    case ErrorKind::BudgetExceeded:
      return kBudget;
    case ErrorKind::NotStabilized:
      return kNotStabilized;
    case ErrorKind::NoGoodPrime:
      return kNoGoodPrime;
    default:
      return kFailure;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"p-adic dynamics of plane automorphisms", "padyn"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--input", cfg.input, "map description file");
  app.add_option("--levels", cfg.levels, "residue levels k, ascending")->delimiter(',');
  app.add_option("--nmax", cfg.n_max, "largest cycle length to lift");
  app.add_option("--precision", cfg.precision, "override the working precision N");
  app.add_option("--budget", cfg.budget, "largest number of residue points to enumerate");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_option("--primes", cfg.primes, "candidate primes for certify")->delimiter(',');
  for (const char* name : {"check", "cycles", "periods", "bound", "certify", "selftest"}) {
    app.add_subcommand(name)->callback([&cfg, name] { cfg.command = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (cfg.command != "selftest" && cfg.input.empty()) {
    err << "error: --input is required\n";
    return kUsage;
  }
  if (cfg.levels.empty() || !std::is_sorted(cfg.levels.begin(), cfg.levels.end()) || cfg.levels.front() == 0) {
    err << "error: --levels must be positive and ascending\n";
    return kUsage;
  }
  if (cfg.budget == 0) {
    err << "error: --budget must be positive\n";
    return kUsage;
  }
  if (cfg.format == "csv" && cfg.command != "cycles") {
    err << "error: csv output is only available for cycles\n";
    return kUsage;
  }

  try {
    if (cfg.command == "check") return cmd_check(cfg, out);
    if (cfg.command == "cycles") return cmd_cycles(cfg, out);
    if (cfg.command == "periods") return cmd_periods(cfg, out);
    if (cfg.command == "bound") return cmd_bound(cfg, out);
    if (cfg.command == "certify") return cmd_certify(cfg, out);
    return SelfTest(cfg.seed, out).run();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace padyn::cli
