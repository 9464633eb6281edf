// Independent reference implementations used only by the tests.
#ifndef QSHAPE_TESTS_ORACLES_HPP
#define QSHAPE_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <Eigen/Core>
#include <Eigen/LU>

namespace oracle {

inline std::vector<std::pair<std::uint64_t, int>> trial_factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Bareiss fraction-free determinant.
inline mpz_class bareiss(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// disc(X^4 - m) from the Sylvester resultant of f and f'.
inline mpz_class quartic_disc_via_resultant(long m) {
  const std::vector<mpz_class> f{1, 0, 0, 0, mpz_class(-m)};  // descending
  const std::vector<mpz_class> df{4, 0, 0, 0};
  std::vector<std::vector<mpz_class>> s(7, std::vector<mpz_class>(7, 0));
  for (int r = 0; r < 3; ++r)
    for (int j = 0; j < 5; ++j) s[r][r + j] = f[j];
  for (int r = 0; r < 4; ++r)
    for (int j = 0; j < 4; ++j) s[3 + r][r + j] = df[j];
  // disc = (-1)^(n(n-1)/2) Res(f, f') / lc(f), n = 4.
  return bareiss(s);
}

// #{(a, b, c) : a >= c >= 1, a c b^(2/3) < N, a <= R1 c, b <= R2} by a plain triple loop.
inline std::uint64_t triple_loop_count(double N, double R1, double R2) {
  std::uint64_t n = 0;
  for (std::uint64_t b = 1; b <= static_cast<std::uint64_t>(R2); ++b) {
    const double w = std::cbrt(static_cast<double>(b * b));
    for (std::uint64_t a = 1; a < N; ++a)
      for (std::uint64_t c = 1; c <= a && static_cast<double>(a * c) * w < N; ++c)
        if (static_cast<double>(a) <= R1 * static_cast<double>(c)) ++n;
  }
  return n;
}

inline bool squarefree(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return n != 0;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) a %= b, std::swap(a, b);
  return a;
}

// Minkowski's inequalities checked directly, without normalization.
inline bool minkowski_reduced(const Eigen::Matrix3d& y, double tol) {
  const double t = tol * y.cwiseAbs().maxCoeff();
  if (y(0, 0) > y(1, 1) + t || y(1, 1) > y(2, 2) + t) return false;
  if (y(0, 1) < -t || 2 * y(0, 1) > y(0, 0) + t || y(1, 2) < -t || 2 * y(1, 2) > y(1, 1) + t) return false;
  if (2 * std::abs(y(0, 2)) > y(0, 0) + t) return false;
  for (int s0 : {-1, 1})
    for (int s1 : {-1, 1})
      for (int s2 : {-1, 1}) {
        Eigen::Vector3d e(s0, s1, s2);
        if (e.dot(y * e) < y(2, 2) - t) return false;
      }
  return true;
}

// First unimodular u with entries in [-2, 2] for which u^T g u is Minkowski reduced.
inline bool exhaustive_reduce(const Eigen::Matrix3d& g, Eigen::Matrix3d& out) {
  Eigen::Matrix3i u;
  for (long idx = 0; idx < 1953125; ++idx) {
    long t = idx;
    for (int k = 0; k < 9; ++k) u(k / 3, k % 3) = static_cast<int>(t % 5) - 2, t /= 5;
    const double d = u.cast<double>().determinant();
    if (std::abs(std::abs(d) - 1) > 0.5) continue;
    const Eigen::Matrix3d c = u.cast<double>().transpose() * g * u.cast<double>();
    if (minkowski_reduced(c, 1e-9)) {
      out = c;
      return true;
    }
  }
  return false;
}

}  // namespace oracle

#endif  // QSHAPE_TESTS_ORACLES_HPP
