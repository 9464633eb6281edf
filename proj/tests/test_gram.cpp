#include <doctest.h>

#include <algorithm>

#include "qshape/gram.hpp"
#include "qshape/io.hpp"
#include "qshape/reduction.hpp"

using namespace qshape;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

QuadraticReal surd(long coeff, std::uint64_t d) { return QuadraticReal::surd(q(coeff), d); }

}  // namespace

TEST_CASE("quad_eval") {
  CHECK(quad_eval(QuadraticReal(q(1), q(0), 2)) == 1.0);
  CHECK(quad_eval(QuadraticReal(q(0), q(1), 2)) == doctest::Approx(1.4142135623730951).epsilon(1e-15));
  CHECK(quad_eval(QuadraticReal(q(1, 2), q(-1, 4), 5)) == doctest::Approx(-0.0590169943749474).epsilon(1e-13));
}

TEST_CASE("QuadraticReal arithmetic and exact sign") {
  const QuadraticReal r2 = surd(1, 2);
  CHECK(r2 * r2 == QuadraticReal(2));
  CHECK(surd(1, 8) == surd(2, 2));
  CHECK(surd(3, 9) == QuadraticReal(9));
  // 1393/985 is a convergent just below sqrt(2)
  CHECK((QuadraticReal(q(1393, 985)) - r2).sign() < 0);
  CHECK((QuadraticReal(q(3363, 2378)) - r2).sign() > 0);
  const QuadraticReal x(q(3, 2), q(-5, 7), 3);
  CHECK((x / x) == QuadraticReal(1));
  CHECK(QuadraticReal::parse(x.to_string()) == x);
  CHECK(QuadraticReal::parse("-sqrt(5)") == surd(-1, 5));
  CHECK(QuadraticReal::parse("7/3") == QuadraticReal(q(7, 3)));
  CHECK_THROWS_AS(surd(1, 2) + surd(1, 3), QuarticError);
  CHECK(surd(4, 2).to_string() == "4*sqrt(2)");
}

TEST_CASE("gram_type_ii examples") {
  Gram4 e = Gram4::Zero();
  e.diagonal() << QuadraticReal(4), QuadraticReal(8), surd(4, 2), surd(8, 2);
  CHECK(gram_type_ii(PureQuarticField::from_m(2)) == e);
  e.diagonal() << QuadraticReal(4), QuadraticReal(28), surd(4, 7), surd(28, 7);
  CHECK(gram_type_ii(PureQuarticField::from_m(-7)) == e);
  e.diagonal() << QuadraticReal(4), QuadraticReal(12), surd(8, 3), surd(24, 3);
  CHECK(gram_type_ii(PureQuarticField::from_m(12)) == e);
}

TEST_CASE("change_of_basis rows") {
  CHECK(change_of_basis(FieldType::II, 3, 1) == RationalMatrix4::Identity());
  RationalMatrix4 c3 = RationalMatrix4::Identity();
  c3.row(1) << q(1, 2), q(1, 2), 0, 0;
  c3.row(3) << 0, 0, q(1, 2), q(1, 2);
  CHECK(change_of_basis(FieldType::III, 5, 1) == c3);
  const RationalMatrix4 c5 = change_of_basis(FieldType::V, 7, 2);
  CHECK(c5(3, 0) == 0);
  CHECK(c5(3, 1) == q(1, 2));
  CHECK(c5(3, 2) == q(1, 4));
  CHECK(c5(3, 3) == q(1, 4));
}

TEST_CASE("gram entries") {
  CHECK(gram(PureQuarticField::from_m(2)) == gram_type_ii(PureQuarticField::from_m(2)));
  CHECK(gram(PureQuarticField::from_m(5))(1, 1) == QuadraticReal(6));
  CHECK(gram(PureQuarticField::from_m(17))(0, 3) == QuadraticReal(17));
  CHECK(gram(PureQuarticField::from_m(12))(2, 2) == QuadraticReal(q(4), q(2), 3));
}

TEST_CASE("gram_numeric examples") {
  const Eigen::Matrix4d g2 = gram_numeric(PureQuarticField::from_m(2));
  CHECK(g2(0, 0) == doctest::Approx(4));
  CHECK(g2(1, 1) == doctest::Approx(8));
  CHECK(g2(2, 2) == doctest::Approx(5.656854249492381));
  CHECK(g2(3, 3) == doctest::Approx(11.313708498984761));
  CHECK(std::abs(g2(0, 2)) < 1e-12);
  CHECK(gram_numeric(PureQuarticField::from_m(-7))(0, 0) == doctest::Approx(4));
  CHECK(gram_numeric(PureQuarticField::from_m(12))(2, 2) == doctest::Approx(4 + 2 * std::sqrt(3.0)));
}

TEST_CASE("project_perp") {
  const Gram4 g2 = gram(PureQuarticField::from_m(2));
  Gram3 e = Gram3::Zero();
  e.diagonal() << QuadraticReal(8), surd(4, 2), surd(8, 2);
  CHECK(project_perp(g2) == e);
  CHECK(project_perp(g2) == Gram3(g2.bottomRightCorner<3, 3>()));
  CHECK(project_perp(gram(PureQuarticField::from_m(17)))(0, 0) == QuadraticReal(17));
}

TEST_CASE("torus factorization examples") {
  for (std::int64_t m : {2, 5, 28, 17, 12, -7, -28}) {
    const TorusCheck c = check_torus_factorization(PureQuarticField::from_m(m));
    INFO("m = " << m << ": " << c.describe());
    CHECK(c.ok);
  }
  CHECK_NOTHROW(require_torus_factorization(PureQuarticField::from_m(28)));
}

TEST_CASE("shape_params") {
  const ShapeParams p2 = shape_params(counting_normal_form(2));
  CHECK(p2.lambda1_sq == q(1, 2));
  CHECK(p2.lambda2 == 1);
  CHECK(p2.lambda1() == doctest::Approx(std::sqrt(0.5)));
  const ShapeParams p12 = shape_params(counting_normal_form(12));
  CHECK(p12.lambda1_sq == q(1, 3));
  CHECK(p12.lambda2 == q(1, 2));
  CHECK(shape_params(counting_normal_form(-7)).lambda1_sq == q(1, 7));
}

TEST_CASE("exact determinant, positivity and numeric agreement over a range") {
  for (std::int64_t m = -600; m <= 600; ++m) {
    if (!is_admissible(m)) continue;
    const PureQuarticField f = PureQuarticField::from_m(m);
    const Gram4 g = gram(f);
    const i128 ad = f.discriminant < 0 ? -f.discriminant : f.discriminant;
    REQUIRE(cofactor_determinant(g) == QuadraticReal(Rational(to_string(ad))));
    REQUIRE(is_positive_definite_exact(g));
    REQUIRE(is_positive_definite_exact(project_perp(g)));
    REQUIRE(g == Gram4(g.transpose()));
    const Eigen::Matrix4d gd = to_double(g), gn = gram_numeric(f);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        REQUIRE(std::abs(gd(i, j) - gn(i, j)) <= 1e-9 * std::max(std::abs(gd(i, j)), std::sqrt(gd(i, i) * gd(j, j))));
  }
}

TEST_CASE("type II reduced diagonal matches the torus parameters") {
  for (std::int64_t m : {2, 3, 6, 7, 10, 11, 18, 50, 75, 99, 338, -2, -6, -10, -14, -18}) {
    const PureQuarticField f = PureQuarticField::from_m(m);
    REQUIRE(f.field_class.type == FieldType::II);
    const ShapeDescriptor s = shape(f);
    const auto& nf = f.funakura_form;
    const double ra = std::abs(static_cast<double>(nf.a)), c = static_cast<double>(nf.c);
    std::array<double, 3> want{1.0 / static_cast<double>(nf.b), std::sqrt(c / ra), std::sqrt(ra / c)};
    std::sort(want.begin(), want.end());
    const double scale = std::cbrt(want[0] * want[1] * want[2]);
    INFO("m = " << m);
    for (int i = 0; i < 3; ++i) CHECK(s.reduced(i, i) == doctest::Approx(want[i] / scale).epsilon(1e-10));
  }
}
