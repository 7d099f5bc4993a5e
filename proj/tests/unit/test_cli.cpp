#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "doctest.h"
#include "padyn/map_format.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = padyn::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string map_path(const std::string& name) { return std::string(PADYN_DATA_DIR) + "/maps/" + name; }

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("check reports loci and predicates") {
  auto r = run({"check", "--input", map_path("henon_q3.json")});
  REQUIRE(r.code == 0);
  auto j = parse(r.out);
  CHECK(j["regular"] == true);
  CHECK(j["special_henon"] == true);
  CHECK(j["loci"]["generic"]["map"] == nlohmann::json::array({"[0:1:0]"}));
  CHECK(j["loci"]["generic"]["inverse"] == nlohmann::json::array({"[1:0:0]"}));
  CHECK(j["loci"]["special"]["map"] == nlohmann::json::array({"[0:1:0]"}));
  CHECK(j["iterate_loci_stable"] == true);
  CHECK(j["degree"] == 2);

  auto t = run({"check", "--input", map_path("triangular_q5.json")});
  REQUIRE(t.code == 0);
  CHECK(parse(t.out)["regular"] == false);

  auto product = parse(run({"check", "--input", map_path("henon_product_q3.json")}).out);
  CHECK(product["degree"] == 6);
  CHECK(product["special_henon"] == true);
}

TEST_CASE("malformed input exits 2") {
  auto bad = write_temp("padyn_bad.json", "{\"prime\": 3,");
  auto r = run({"check", "--input", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("ParseError") != std::string::npos);
  CHECK(r.out.empty());
  CHECK(run({"check", "--input", map_path("missing.json")}).code == 2);
  CHECK(run({"check"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"bound", "--input", map_path("henon_q3.json"), "--levels", "2,1"}).code == 2);
  CHECK(run({"bound", "--input", map_path("henon_q3.json"), "--format", "csv"}).code == 2);
  CHECK(run({"bound", "--input", map_path("henon_q3.json"), "--budget", "0"}).code == 2);
}

TEST_CASE("cycles as csv") {
  auto r = run({"cycles", "--input", map_path("henon_q3.json"), "--levels", "1", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "# level=1\nlength,count\n1,2\n7,1\n");

  auto identity = write_temp("padyn_identity.json",
                             "{\"prime\": 3, \"extension_degree\": 1, \"precision\": 5, \"dimension\": 2, \"factors\": []}");
  auto id = run({"cycles", "--input", identity, "--levels", "1", "--format", "csv"});
  REQUIRE(id.code == 0);
  CHECK(id.out == "# level=1\nlength,count\n1,9\n");

  auto j = run({"cycles", "--input", map_path("henon_q3.json"), "--levels", "1,2"});
  REQUIRE(j.code == 0);
  CHECK(parse(j.out)["levels"][1]["level"] == 2);

  auto budget = run({"cycles", "--input", map_path("henon_q3.json"), "--levels", "3", "--budget", "100"});
  CHECK(budget.code == 3);
  CHECK(budget.err.find("BudgetExceeded") != std::string::npos);
}

TEST_CASE("bound exit status follows stabilization") {
  auto r = run({"bound", "--input", map_path("henon_q3.json"), "--levels", "1,2,3"});
  REQUIRE(r.code == 0);
  auto j = parse(r.out);
  CHECK(j["stabilized"] == true);
  CHECK(j["M_empirical"] == 7);

  CHECK(run({"bound", "--input", map_path("henon_q3.json"), "--levels", "1"}).code == 4);

  auto inv = parse(run({"bound", "--input", map_path("involution_q3.json"), "--levels", "1,2"}).out);
  CHECK(inv["M_empirical"] == 2);

  auto tr = run({"bound", "--input", map_path("translation_q5.json"), "--levels", "1,2"});
  CHECK(tr.code == 0);
  auto tj = parse(tr.out);
  CHECK(tj["M_empirical"] == 0);
  CHECK(tj["no_periodic_points_certified"] == true);

  auto fam = parse(run({"bound", "--input", map_path("henon_family_q3.json"), "--levels", "1,2"}).out);
  CHECK(fam.is_array());
  CHECK(fam.size() == 3);
}

TEST_CASE("periods") {
  auto r = run({"periods", "--input", map_path("henon_q3.json"), "--nmax", "1"});
  REQUIRE(r.code == 0);
  auto j = parse(r.out);
  REQUIRE(j["records"].size() == 2);
  CHECK(j["records"][0]["period"] == 1);

  auto t = parse(run({"periods", "--input", map_path("triangular_q5.json"), "--nmax", "2"}).out);
  CHECK(t["realized"] == nlohmann::json::array({1, 2}));
  CHECK(t["mu_bound"] == 2);
}

TEST_CASE("certify exit codes") {
  auto r = run({"certify", "--input", map_path("henon_q3.json"), "--primes", "3"});
  REQUIRE(r.code == 0);
  auto j = parse(r.out);
  CHECK(j["prime"] == 3);
  CHECK(j["report"]["stabilized"] == true);
  for (const auto& pc : j["rational_points"]) CHECK(pc["within_bound"] == true);

  auto third = run({"certify", "--input", map_path("henon_a_third.json"), "--primes", "3"});
  CHECK(third.code == 5);
  CHECK(third.err.find("NoGoodPrime") != std::string::npos);

  auto five = run({"certify", "--input", map_path("henon_a_third.json"), "--primes", "3,5"});
  REQUIRE(five.code == 0);
  CHECK(parse(five.out)["prime"] == 5);

  CHECK(run({"certify", "--input", map_path("henon_q3.json"), "--levels", "1"}).code == 4);
}

TEST_CASE("output is deterministic") {
  for (auto cmd : {"check", "bound", "certify", "periods"}) {
    auto a = run({cmd, "--input", map_path("conjugated_q3.json"), "--levels", "1,2"});
    auto b = run({cmd, "--input", map_path("conjugated_q3.json"), "--levels", "1,2"});
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  auto s1 = run({"selftest", "--seed", "11"});
  auto s2 = run({"selftest", "--seed", "11"});
  CHECK(s1.code == 0);
  CHECK(s1.out == s2.out);
}

TEST_CASE("bundled map files are canonical") {
  for (const auto& entry : std::filesystem::directory_iterator(std::string(PADYN_DATA_DIR) + "/maps")) {
    std::ifstream in(entry.path());
    std::stringstream ss;
    ss << in.rdbuf();
    CAPTURE(entry.path().string());
    CHECK(padyn::serialize_maps(padyn::parse_maps(ss.str())) == ss.str());
  }
}

TEST_CASE("precision override") {
  auto r = run({"bound", "--input", map_path("henon_q3.json"), "--levels", "1,2", "--precision", "6"});
  REQUIRE(r.code == 0);
  CHECK(parse(r.out)["field"]["precision"] == 6);
}
