#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qshape/io.hpp"
#include "qshape/quartic.hpp"

using namespace qshape;

namespace {

std::int64_t fourth_power_free_part_of_cube(std::int64_t m) {
  std::int64_t out = m < 0 ? -1 : 1;
  for (auto [p, e] : oracle::trial_factor(static_cast<std::uint64_t>(m < 0 ? -m : m))) {
    const int r = (3 * e) % 4;
    for (int i = 0; i < r; ++i) out *= static_cast<std::int64_t>(p);
  }
  return out;
}

}  // namespace

TEST_CASE("factor: small values") {
  CHECK(factor(1).factors.empty());
  const Factorization f12 = factor(12);
  REQUIRE(f12.factors.size() == 2);
  CHECK(f12.factors[0] == std::make_pair<std::uint64_t, int>(2, 2));
  CHECK(f12.factors[1] == std::make_pair<std::uint64_t, int>(3, 1));
  const Factorization f = factor(2662);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == std::make_pair<std::uint64_t, int>(2, 1));
  CHECK(f.factors[1] == std::make_pair<std::uint64_t, int>(11, 3));
}

TEST_CASE("factor agrees with trial division") {
  for (std::uint64_t n = 1; n <= 30000; ++n) {
    const Factorization f = factor(n);
    REQUIRE(f.factors == oracle::trial_factor(n));
    REQUIRE(f.product() == n);
  }
}

TEST_CASE("factor: large cofactors use the rho fallback") {
  const std::uint64_t p = 1000003, q = 1000033;
  const Factorization f = factor(p * q);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].first == p);
  CHECK(f.factors[1].first == q);
  CHECK(factor((1ULL << 61) - 1).factors.size() == 1);
  const std::uint64_t big = 4294967291ULL * 4294967279ULL;
  CHECK(factor(big).product() == big);
}

TEST_CASE("raw_abc") {
  CHECK(raw_abc(12) == RawTriple{3, 2, 1});
  CHECK(raw_abc(88) == RawTriple{11, 1, 2});
  CHECK(raw_abc(-12) == RawTriple{-3, 2, 1});
  CHECK_THROWS_AS(raw_abc(48), QuarticError);
  try {
    raw_abc(48);
  } catch (const QuarticError& e) {
    CHECK(e.code() == ErrorCode::FourthPowerNotFree);
  }
  for (std::int64_t m : {-1, 0, 1}) {
    try {
      raw_abc(m);
      FAIL("expected Degenerate");
    } catch (const QuarticError& e) {
      CHECK(e.code() == ErrorCode::Degenerate);
    }
  }
}

TEST_CASE("raw_abc is a bijection onto coprime squarefree triples") {
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> seen;
  for (std::int64_t m = 2; m <= 20000; ++m) {
    bool fpf = true;
    for (auto [p, e] : oracle::trial_factor(m)) fpf = fpf && e < 4;
    if (!fpf) continue;
    const RawTriple t = raw_abc(m);
    REQUIRE(t.a * t.b * t.b * t.c * t.c * t.c == m);
    REQUIRE(oracle::squarefree(t.a));
    REQUIRE(oracle::squarefree(t.b));
    REQUIRE(oracle::squarefree(t.c));
    REQUIRE(oracle::gcd(t.a, t.b) == 1);
    REQUIRE(oracle::gcd(t.b, t.c) == 1);
    REQUIRE(oracle::gcd(t.a, t.c) == 1);
    REQUIRE(seen.insert({t.a, t.b, t.c}).second);
  }
}

TEST_CASE("counting normal form") {
  const NormalForm n88 = counting_normal_form(88);
  CHECK(n88.a == 11);
  CHECK(n88.b == 1);
  CHECK(n88.c == 2);
  const NormalForm n1080 = counting_normal_form(1080);
  CHECK(n1080.a == 6);
  CHECK(n1080.b == 1);
  CHECK(n1080.c == 5);
  try {
    counting_normal_form(-4);
    FAIL("expected ExcludedMinusFour");
  } catch (const QuarticError& e) {
    CHECK(e.code() == ErrorCode::ExcludedMinusFour);
  }
  try {
    counting_normal_form(9);
    FAIL("expected Reducible");
  } catch (const QuarticError& e) {
    CHECK(e.code() == ErrorCode::Reducible);
  }
  // a = -1 is allowed
  CHECK(counting_normal_form(-9).a == -1);
}

TEST_CASE("funakura normal form") {
  const NormalForm f88 = funakura_normal_form(88);
  CHECK(f88.a == 2);
  CHECK(f88.b == 1);
  CHECK(f88.c == 11);
  CHECK(PureQuarticField::from_m(88).funakura_m == 2662);
  CHECK(funakura_normal_form(12) == NormalForm{3, 2, 1, Sign::Plus, Convention::Funakura});
  CHECK(funakura_normal_form(-7) == NormalForm{-7, 1, 1, Sign::Minus, Convention::Funakura});
}

TEST_CASE("classify") {
  CHECK(classify(2) == FieldClass{FieldType::II, Sign::Plus, 8, 8});
  CHECK(classify(17).type == FieldType::I);
  CHECK(classify(88).type == FieldType::II);
  CHECK(classify(-7) == FieldClass{FieldType::I, Sign::Minus, 2, 2});
  CHECK(classify(5).type == FieldType::III);
  CHECK(classify(12).type == FieldType::IV);
  CHECK(classify(28).type == FieldType::V);
}

TEST_CASE("discriminant and index check") {
  CHECK(to_string(PureQuarticField::from_m(2).discriminant) == "-2048");
  CHECK(to_string(PureQuarticField::from_m(5).discriminant) == "-2000");
  CHECK(to_string(PureQuarticField::from_m(12).discriminant) == "-1728");
  CHECK(to_string(PureQuarticField::from_m(17).discriminant) == std::to_string(-4 * 17 * 17 * 17));
  for (std::int64_t m : {2, 5, 17, 12, -7, 88}) CHECK(index_square_check(PureQuarticField::from_m(m)));
}

TEST_CASE("resultant oracle reproduces -256 m^3") {
  for (long m : {2L, 5L, -7L, 12L, 2662L}) CHECK(oracle::quartic_disc_via_resultant(m) == mpz_class(-256) * m * m * m);
}

TEST_CASE("disc_bound_to_N") {
  CHECK(disc_bound_to_N(256, classify(2)) == doctest::Approx(1.0));
  CHECK(disc_bound_to_N(4000, classify(17)) == doctest::Approx(10.0));
  CHECK(disc_bound_to_N(16 * 27, classify(5)) == doctest::Approx(3.0));
}

TEST_CASE("every admissible m up to 10^4 gets exactly one class") {
  std::set<std::pair<FieldType, Sign>> classes;
  int count = 0;
  for (std::int64_t m = -10000; m <= 10000; ++m) {
    if (!is_admissible(m)) continue;
    ++count;
    const PureQuarticField f = PureQuarticField::from_m(m);
    classes.insert({f.field_class.type, f.field_class.sign});
    REQUIRE(f.funakura_m % 8 != 0);
    const std::int64_t r = mod_floor(f.funakura_m, 32);
    const int matches = (r % 8 == 1) + (r % 4 == 2 || r % 4 == 3) + (r % 16 == 4 || r % 8 == 5) + (r == 12) + (r == 28);
    REQUIRE(matches == 1);
    REQUIRE(index_square_check(f));
    REQUIRE((f.funakura_m == m || f.funakura_m == fourth_power_free_part_of_cube(m)));
    REQUIRE(f.counting_form.value() == (f.counting_form.a == raw_abc(m).a ? m : fourth_power_free_part_of_cube(m)));
    REQUIRE(std::abs(f.counting_form.a) >= f.counting_form.c);
    REQUIRE(f.funakura_form.c % 2 == 1);
  }
  CHECK(classes.size() == 10);
  CHECK(count > 15000);
}
