#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "padyn/error.hpp"
#include "padyn/lifting.hpp"
#include "padyn/padic.hpp"

using namespace padyn;

namespace {

PadicElement num(FieldSpec k, std::int64_t v) { return PadicElement::from_int(k, v); }

std::uint64_t residue_mod(const PadicElement& x, unsigned level) { return x.reduce(level)[0]; }

// Teichmueller representative by direct powering modulo p^k.
std::int64_t teichmueller_by_powering(std::int64_t r, std::int64_t p, std::int64_t modulus) {
  std::int64_t a = r;
  for (;;) {
    std::int64_t next = oracle::powmod(a, p, modulus);
    if (next == a) return a;
    a = next;
  }
}

PadicElement random_element(FieldSpec k, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> digits(-500, 500);
  std::uniform_int_distribution<int> shape(0, 5);
  std::int64_t n = digits(rng);
  switch (shape(rng)) {
    case 0: return PadicElement::zero(k);
    case 1: return PadicElement::from_rational(k, n, 1 + std::abs(digits(rng)));
    case 2: return num(k, n) * num(k, static_cast<std::int64_t>(k.prime()));
    default: return num(k, n);
  }
}

}  // namespace

TEST_CASE("field spec validation") {
  CHECK_THROWS_AS(FieldSpec::create(4, 5), Error);
  CHECK_THROWS_AS(FieldSpec::create(3, 0), Error);
  CHECK_THROWS_AS(FieldSpec::create(3, 5, 2, {1, 0, 1, 0}), Error);
  // x^2 + 1 is reducible mod 5 (2^2 = -1)
  CHECK_THROWS_AS(FieldSpec::create(5, 5, 2, {1, 0, 1}), Error);
  FieldSpec a = FieldSpec::create(3, 4, 2);
  CHECK(a == FieldSpec::create(3, 4, 2));
  CHECK_FALSE(a == FieldSpec::create(3, 5, 2));
  CHECK(a.residue_cardinality() == 9);
  CHECK(FieldSpec::create(2, 8).roots_of_unity_order() == 2);
  CHECK(default_modulus(11, 2).size() == 3);
  CHECK(is_irreducible_mod_p(default_modulus(11, 3), 11));
}

TEST_CASE("field arithmetic examples") {
  FieldSpec q5 = FieldSpec::create(5, 10);
  PadicElement a = num(q5, 17);
  CHECK(PadicElement::zero(q5) + a == a);

  PadicElement five = num(q5, 2) + num(q5, 3);
  CHECK(five == num(q5, 5));
  CHECK(five.valuation() == 1);

  FieldSpec q5n2 = FieldSpec::create(5, 2);
  PadicElement half = num(q5n2, 1) / num(q5n2, 2);
  CHECK(residue_mod(half, 2) == static_cast<std::uint64_t>(oracle::inverse_by_search(2, 25)));
  CHECK(residue_mod(half, 2) == 13);

  CHECK_THROWS_AS(num(q5, 1) / PadicElement::zero(q5), Error);
  CHECK_THROWS_AS(num(q5, 1) + num(FieldSpec::create(3, 10), 1), Error);
}

TEST_CASE("valuation examples") {
  FieldSpec q3 = FieldSpec::create(3, 10);
  CHECK_FALSE(PadicElement::zero(q3).valuation().has_value());
  CHECK(num(q3, 3).valuation() == 1);
  CHECK((num(q3, 9) + num(q3, 27)).valuation() == 2);
  CHECK(PadicElement::from_rational(q3, 1, 18).valuation() == -2);
}

TEST_CASE("reduction to the residue field") {
  FieldSpec q5 = FieldSpec::create(5, 6);
  CHECK(reduce_to_residue(num(q5, 5)).is_zero());
  CHECK(reduce_to_residue(num(q5, 7)) == ResidueElement::from_int(q5, 2));
  CHECK(reduce_to_residue(num(q5, 1)) == ResidueElement::from_int(q5, 1));
  CHECK_THROWS_AS(reduce_to_residue(PadicElement::from_rational(q5, 1, 5)), Error);
}

TEST_CASE("teichmueller lifts") {
  FieldSpec q5 = FieldSpec::create(5, 2);
  CHECK(teichmueller(ResidueElement::from_int(q5, 1)) == num(q5, 1));
  CHECK(residue_mod(teichmueller(ResidueElement::from_int(q5, 2)), 2) ==
        static_cast<std::uint64_t>(teichmueller_by_powering(2, 5, 25)));
  CHECK(residue_mod(teichmueller(ResidueElement::from_int(q5, 2)), 2) == 7);
  CHECK(residue_mod(teichmueller(ResidueElement::from_int(q5, 4)), 2) == 24);
  CHECK_THROWS_AS(teichmueller(ResidueElement::from_int(q5, 0)), Error);

  FieldSpec q5n3 = FieldSpec::create(5, 3);
  CHECK(residue_mod(teichmueller(ResidueElement::from_int(q5n3, 2)), 3) ==
        static_cast<std::uint64_t>(teichmueller_by_powering(2, 5, 125)));
}

TEST_CASE("root of unity order") {
  FieldSpec q5 = FieldSpec::create(5, 2);
  CHECK(root_of_unity_order(num(q5, 1)) == 1u);
  CHECK(root_of_unity_order(num(q5, -1)) == 2u);
  REQUIRE(oracle::powmod(7, 4, 25) == 1);
  CHECK(root_of_unity_order(num(q5, 7)) == 4u);
  CHECK_FALSE(root_of_unity_order(num(FieldSpec::create(5, 3), 7)).has_value());
  CHECK_THROWS_AS(root_of_unity_order(num(q5, 5)), Error);

  FieldSpec q2 = FieldSpec::create(2, 10);
  CHECK(root_of_unity_order(num(q2, -1)) == 2u);
  CHECK_FALSE(root_of_unity_order(num(q2, 3)).has_value());
  // 2 and 3 are not roots of unity in Z_5.
  CHECK_FALSE(root_of_unity_order(num(FieldSpec::create(5, 10), 2)).has_value());
  CHECK_FALSE(root_of_unity_order(num(FieldSpec::create(5, 10), 3)).has_value());
}

TEST_CASE("hensel lifting of simple roots") {
  FieldSpec q3 = FieldSpec::create(3, 10);
  UniPoly g(q3, {num(q3, -1), num(q3, 0), num(q3, 1)});
  CHECK(hensel_lift_root(g, ResidueElement::from_int(q3, 1)) == num(q3, 1));

  FieldSpec q5 = FieldSpec::create(5, 2);
  UniPoly h(q5, {num(q5, 1), num(q5, 0), num(q5, 1)});
  PadicElement x = hensel_lift_root(h, ResidueElement::from_int(q5, 2));
  CHECK(residue_mod(x, 2) == 7);
  CHECK(oracle::mod(7 * 7 + 1, 25) == 0);

  UniPoly k(q3, {num(q3, 0), num(q3, -1), num(q3, 1)});
  CHECK(hensel_lift_root(k, ResidueElement::from_int(q3, 0)).is_zero());
  CHECK_THROWS_AS(hensel_lift_root(k, ResidueElement::from_int(q3, 2)), Error);
  UniPoly sq(q3, {num(q3, 0), num(q3, 0), num(q3, 1)});
  CHECK_THROWS_AS(hensel_lift_root(sq, ResidueElement::from_int(q3, 0)), Error);
}

TEST_CASE("newton lifting of systems") {
  FieldSpec q3 = FieldSpec::create(3, 10);
  auto X = MultiPoly::variable(q3, 2, 0);
  auto Y = MultiPoly::variable(q3, 2, 1);
  std::vector<MultiPoly> id{X, Y};
  std::vector<ResidueElement> origin{ResidueElement::from_int(q3, 0), ResidueElement::from_int(q3, 0)};
  auto p0 = newton_lift_system(id, origin);
  CHECK(p0[0].is_zero());
  CHECK(p0[1].is_zero());

  auto two = MultiPoly::constant(q3, 2, num(q3, 2));
  std::vector<MultiPoly> fixed{X * X - two * X, X - Y};
  std::vector<ResidueElement> r22{ResidueElement::from_int(q3, 2), ResidueElement::from_int(q3, 2)};
  auto p = newton_lift_system(fixed, r22);
  CHECK(p[0] == num(q3, 2));
  CHECK(p[1] == num(q3, 2));
  auto o = newton_lift_system(fixed, origin);
  CHECK(o[0].is_zero());
  CHECK(o[1].is_zero());

  std::vector<ResidueElement> r11{ResidueElement::from_int(q3, 1), ResidueElement::from_int(q3, 1)};
  CHECK_THROWS_AS(newton_lift_system(fixed, r11), Error);
  std::vector<MultiPoly> singular{X * X, Y};
  CHECK_THROWS_AS(newton_lift_system(singular, origin), Error);
}

TEST_CASE("literal parsing and formatting") {
  FieldSpec q5 = FieldSpec::create(5, 6);
  CHECK(PadicElement::parse(q5, "-1") == num(q5, -1));
  CHECK(PadicElement::parse(q5, "1/8") == PadicElement::from_rational(q5, 1, 8));
  CHECK(PadicElement::parse(q5, "[1,2]@p^-1") == PadicElement::from_rational(q5, 11, 5));
  CHECK(PadicElement::parse(q5, "[0,0,3]") == num(q5, 75));
  CHECK(num(q5, -7).to_string() == "-7");
  CHECK(num(q5, 42).to_string() == "42");
  CHECK(PadicElement::from_rational(q5, 3, 25).to_string() == "[3]@p^-2");
  CHECK_THROWS_AS(PadicElement::parse(q5, "1/0"), Error);
  CHECK_THROWS_AS(PadicElement::parse(q5, "[7]"), Error);
  CHECK_THROWS_AS(PadicElement::parse(q5, "x"), Error);

  FieldSpec k = FieldSpec::create(3, 5, 2);
  PadicElement t = PadicElement::parse(k, "{0,1}");
  CHECK(t.to_string() == "{0,1}");
  CHECK(PadicElement::parse(k, "{1/2,3}").to_string() == PadicElement::parse(k, "{1/2,3}").to_string());
  CHECK_THROWS_AS(PadicElement::parse(k, "{1}"), Error);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    PadicElement x = random_element(q5, rng);
    CHECK(PadicElement::parse(q5, x.to_string()) == x);
  }
}

TEST_CASE("rational reconstruction") {
  FieldSpec q5 = FieldSpec::create(5, 12);
  auto r = rational_reconstruct(PadicElement::from_rational(q5, 1, 8));
  REQUIRE(r.has_value());
  CHECK(r->first == 1);
  CHECK(r->second == 8);
  auto s = rational_reconstruct(PadicElement::from_rational(q5, -3, 25));
  REQUIRE(s.has_value());
  CHECK(s->first == -3);
  CHECK(s->second == 25);
}

TEST_CASE("ring axioms hold exactly") {
  for (std::uint64_t p : {2u, 3u, 5u}) {
    FieldSpec k = FieldSpec::create(p, 12);
    std::mt19937_64 rng(p);
    for (int i = 0; i < 300; ++i) {
      PadicElement a = random_element(k, rng), b = random_element(k, rng), c = random_element(k, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a - a == PadicElement::zero(k));
      if (!b.is_zero()) CHECK((a / b) * b == a);
    }
  }
}

TEST_CASE("ring axioms in an unramified extension") {
  FieldSpec k = FieldSpec::create(3, 8, 2);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> d(-40, 40);
  auto rnd = [&] { return PadicElement::parse(k, "{" + std::to_string(d(rng)) + "," + std::to_string(d(rng)) + "}"); };
  for (int i = 0; i < 200; ++i) {
    PadicElement a = rnd(), b = rnd(), c = rnd();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("valuation is multiplicative and ultrametric") {
  FieldSpec k = FieldSpec::create(3, 12);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    PadicElement a = random_element(k, rng), b = random_element(k, rng);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK(*(a * b).valuation() == *a.valuation() + *b.valuation());
    PadicElement s = a + b;
    if (s.is_zero()) continue;
    CHECK(*s.valuation() >= std::min(*a.valuation(), *b.valuation()));
    if (*a.valuation() != *b.valuation()) CHECK(*s.valuation() == std::min(*a.valuation(), *b.valuation()));
  }
}

TEST_CASE("teichmueller properties") {
  for (auto spec : {FieldSpec::create(5, 6), FieldSpec::create(7, 5), FieldSpec::create(3, 5, 2),
                    FieldSpec::create(2, 6, 3)}) {
    ResidueRing field(spec, 1);
    const std::uint64_t q = spec.residue_cardinality();
    for (std::uint64_t i = 1; i < q; ++i) {
      ResidueElement r{spec, field.from_index(i)};
      PadicElement w = teichmueller(r);
      CHECK(w.pow(static_cast<std::int64_t>(q - 1)) == PadicElement::one(spec));
      CHECK(reduce_to_residue(w) == r);
      CHECK(root_of_unity_order(w) == multiplicative_order(r));
    }
  }
}

TEST_CASE("precision monotonicity of lifts") {
  FieldSpec fine = FieldSpec::create(5, 9);
  FieldSpec coarse = FieldSpec::create(5, 4);
  for (int r = 1; r < 5; ++r) {
    PadicElement a = teichmueller(ResidueElement::from_int(fine, r)).truncate(coarse);
    CHECK(a == teichmueller(ResidueElement::from_int(coarse, r)));
  }
  UniPoly g_fine(fine, {num(fine, 1), num(fine, 0), num(fine, 1)});
  UniPoly g_coarse(coarse, {num(coarse, 1), num(coarse, 0), num(coarse, 1)});
  for (int r : {2, 3}) {
    CHECK(hensel_lift_root(g_fine, ResidueElement::from_int(fine, r)).truncate(coarse) ==
          hensel_lift_root(g_coarse, ResidueElement::from_int(coarse, r)));
  }
}

TEST_CASE("hensel output is a root with the right residue") {
  FieldSpec k = FieldSpec::create(7, 8);
  // x^3 - 2 has three simple roots mod 7? 2 is a cube mod 7 only if ... test whatever roots exist.
  UniPoly g(k, {num(k, -2), num(k, 0), num(k, 0), num(k, 1)});
  int found = 0;
  for (int r = 0; r < 7; ++r) {
    if (oracle::mod(r * r * r - 2, 7) != 0) continue;
    PadicElement x = hensel_lift_root(g, ResidueElement::from_int(k, r));
    CHECK(g(x).is_zero());
    CHECK(reduce_to_residue(x) == ResidueElement::from_int(k, r));
    ++found;
  }
  CHECK(found == 0);  // 2 is not a cube modulo 7.
  UniPoly h(k, {num(k, -2), num(k, 0), num(k, 1)});
  for (int r : {3, 4}) {
    PadicElement x = hensel_lift_root(h, ResidueElement::from_int(k, r));
    CHECK(h(x).is_zero());
    CHECK(reduce_to_residue(x) == ResidueElement::from_int(k, r));
  }
}
