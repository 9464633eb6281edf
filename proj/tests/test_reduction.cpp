#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qshape/reduction.hpp"

using namespace qshape;

namespace {

Eigen::Matrix3d random_pd(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::Matrix3d a;
  for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = u(rng);
  return a * a.transpose() + 0.05 * Eigen::Matrix3d::Identity();
}

Eigen::Matrix3i random_unimodular(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  Eigen::Matrix3i u;
  do {
    for (int i = 0; i < 9; ++i) u(i / 3, i % 3) = d(rng);
  } while (std::abs(u.cast<double>().determinant() - 1) > 0.5 && std::abs(u.cast<double>().determinant() + 1) > 0.5);
  return u;
}

Eigen::Matrix3d act(const Eigen::Matrix3d& g, const Eigen::Matrix3i& u) {
  return u.cast<double>().transpose() * g * u.cast<double>();
}

}  // namespace

TEST_CASE("iwasawa coordinates") {
  const IwasawaCoords id = iwasawa(Eigen::Matrix3d::Identity());
  CHECK(id.x1 == 0);
  CHECK(id.x2 == 0);
  CHECK(id.x3 == 0);
  CHECK(id.y1 == doctest::Approx(1));
  CHECK(id.y2 == doctest::Approx(1));

  const Eigen::Matrix3d d = Eigen::Vector3d(1, 2, 3).asDiagonal();
  const IwasawaCoords v = iwasawa(d / std::cbrt(6.0));
  CHECK(v.y1 == doctest::Approx(std::pow(6.0, -1.0 / 3)));
  CHECK(v.y2 == doctest::Approx(2 * std::pow(6.0, -1.0 / 3)));
  CHECK(std::abs(v.x1) < 1e-15);

  Eigen::Matrix3d n = Eigen::Matrix3d::Identity();
  n(0, 1) = 0.25;
  CHECK(iwasawa(n.transpose() * n).x1 == doctest::Approx(0.25));

  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const Eigen::Matrix3d g = random_pd(rng);
    const Eigen::Matrix3d back = iwasawa(g).reconstruct();
    CHECK((back - normalize_det(g)).cwiseAbs().maxCoeff() < 1e-12 * normalize_det(g).cwiseAbs().maxCoeff() * 10);
  }
  Eigen::Matrix3d bad = Eigen::Matrix3d::Identity();
  bad(2, 2) = -1;
  CHECK_THROWS_AS(iwasawa(bad), QuarticError);
}

TEST_CASE("in_fundamental_domain") {
  CHECK(in_fundamental_domain(Eigen::Matrix3d::Identity()));
  CHECK(in_fundamental_domain(Eigen::Vector3d(1, 2, 3).asDiagonal().toDenseMatrix()));
  CHECK_FALSE(in_fundamental_domain(Eigen::Vector3d(3, 2, 1).asDiagonal().toDenseMatrix()));
}

TEST_CASE("minkowski_reduce examples") {
  const Reduction id = minkowski_reduce(Eigen::Matrix3d::Identity());
  CHECK((id.reduced - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(id.unimodular == Eigen::Matrix3i::Identity());

  Eigen::Matrix3i u = Eigen::Matrix3i::Identity();
  u(0, 1) = 1;
  const Eigen::Matrix3d d = Eigen::Vector3d(1, 2, 3).asDiagonal();
  const Reduction r = minkowski_reduce(act(d, u));
  CHECK((r.reduced - normalize_det(d)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("minkowski_reduce postconditions on random input") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const Eigen::Matrix3d g = random_pd(rng);
    const Reduction r = minkowski_reduce(g);
    REQUIRE(in_fundamental_domain(r.reduced));
    REQUIRE(satisfies_iwasawa_bounds(iwasawa(r.reduced), 1e-9));
    REQUIRE(std::abs(std::abs(r.unimodular.cast<double>().determinant()) - 1) < 1e-9);
    const Eigen::Matrix3d back = normalize_det(act(g, r.unimodular));
    REQUIRE((back - r.reduced).cwiseAbs().maxCoeff() < 1e-9 * back.cwiseAbs().maxCoeff());
    const Reduction again = minkowski_reduce(r.reduced);
    REQUIRE((again.reduced - r.reduced).cwiseAbs().maxCoeff() < 1e-10 * r.reduced.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("successive minima agree with the exhaustive oracle") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 6; ++k) {
    const Eigen::Matrix3d g = random_pd(rng);
    const Eigen::Matrix3d r = minkowski_reduce(g).reduced;
    // start the oracle from an LLL basis so the [-2, 2] box suffices
    const Eigen::Matrix3d start = act(g, lll_reduce(g));
    Eigen::Matrix3d o;
    REQUIRE(oracle::exhaustive_reduce(start, o));
    const Eigen::Vector3d od = normalize_det(o).diagonal();
    for (int i = 0; i < 3; ++i) CHECK(r(i, i) == doctest::Approx(od(i)).epsilon(1e-9));
  }
}

TEST_CASE("shapes_equivalent") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Matrix3d g = random_pd(rng);
    CHECK(shapes_equivalent(g, act(g, random_unimodular(rng, 2))));
    CHECK(shapes_equivalent(g, 7 * g));
  }
  CHECK_FALSE(shapes_equivalent(Eigen::Matrix3d::Identity(), Eigen::Vector3d(1, 2, 4).asDiagonal().toDenseMatrix()));
}

TEST_CASE("boundary inputs canonicalize consistently") {
  // hexagonal-type forms sit on several walls at once
  Eigen::Matrix3d a4;
  a4 << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  std::mt19937_64 rng(21);
  const Eigen::Matrix3d base = minkowski_reduce(a4).reduced;
  for (int k = 0; k < 30; ++k) {
    const Eigen::Matrix3d r = minkowski_reduce(act(a4, random_unimodular(rng, 2))).reduced;
    CHECK((r - base).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("shape descriptors of fields") {
  const ShapeDescriptor s2 = shape(PureQuarticField::from_m(2));
  const Eigen::Vector3d want(std::sqrt(0.5), 1, std::sqrt(2.0));
  for (int i = 0; i < 3; ++i) CHECK(s2.reduced(i, i) == doctest::Approx(want(i)));
  CHECK(in_fundamental_domain(s2.reduced));

  const ShapeDescriptor s17 = shape(PureQuarticField::from_m(17));
  CHECK(s17.params.lambda1_sq == Rational(1, 17));
  CHECK(s17.params.lambda2 == 1);
  CHECK(in_fundamental_domain(s17.reduced));

  const ShapeDescriptor s7 = shape(PureQuarticField::from_m(-7));
  CHECK(shapes_equivalent(to_double(s7.projected), s7.reduced));
  CHECK_FALSE(shapes_equivalent(to_double(s7.projected), to_double(shape(PureQuarticField::from_m(-23)).projected)));
}
