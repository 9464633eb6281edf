#include "qshape/reduction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Geometry>
#include <Eigen/LU>

namespace qshape {

namespace {

using Vec3i = Eigen::Vector3i;

double scale_of(const Eigen::Matrix3d& y) { return std::max(1.0, y.cwiseAbs().maxCoeff()); }

Eigen::Matrix3d congruence(const Eigen::Matrix3d& g, const Eigen::Matrix3i& u) {
  const Eigen::Matrix3d ud = u.cast<double>();
  Eigen::Matrix3d r = ud.transpose() * g * ud;
  return 0.5 * (r + r.transpose());
}

int det3(const Eigen::Matrix3i& u) {
  return u(0, 0) * (u(1, 1) * u(2, 2) - u(1, 2) * u(2, 1)) - u(0, 1) * (u(1, 0) * u(2, 2) - u(1, 2) * u(2, 0)) +
         u(0, 2) * (u(1, 0) * u(2, 1) - u(1, 1) * u(2, 0));
}

/// Smallest slack among the Minkowski inequalities, relative to scale.
double boundary_slack(const Eigen::Matrix3d& y) {
  double s = std::min({y(1, 1) - y(0, 0), y(2, 2) - y(1, 1), y(0, 1), 0.5 * y(0, 0) - y(0, 1), y(1, 2),
                       0.5 * y(1, 1) - y(1, 2), 0.5 * y(0, 0) - std::abs(y(0, 2))});
  for (int e1 : {-1, 1})
    for (int e2 : {-1, 1}) {
      const double q = y(0, 0) + y(1, 1) + 2 * (e1 * y(0, 1) + e2 * y(0, 2) + e1 * e2 * y(1, 2));
      s = std::min(s, q);
    }
  return s / scale_of(y);
}

std::array<double, 6> coordinate_vector(const Eigen::Matrix3d& y) {
  return {y(0, 0), y(1, 1), y(2, 2), y(0, 1), y(0, 2), y(1, 2)};
}

std::array<long long, 6> rounded_key(const Eigen::Matrix3d& y) {
  const double grid = tolerance::kBoundary * scale_of(y);
  std::array<long long, 6> key{};
  const auto v = coordinate_vector(y);
  for (int i = 0; i < 6; ++i) key[i] = std::llround(v[i] / grid);
  return key;
}

std::vector<Eigen::Matrix3i> unimodular_box(int bound) {
  std::vector<Eigen::Matrix3i> out;
  const int span = 2 * bound + 1;
  long long total = 1;
  for (int i = 0; i < 9; ++i) total *= span;
  Eigen::Matrix3i u;
  for (long long idx = 0; idx < total; ++idx) {
    long long t = idx;
    for (int k = 0; k < 9; ++k) {
      u(k / 3, k % 3) = static_cast<int>(t % span) - bound;
      t /= span;
    }
    const int d = det3(u);
    if (d == 1 || d == -1) out.push_back(u);
  }
  return out;
}

const std::vector<Eigen::Matrix3i>& small_unimodulars() {
  static const std::vector<Eigen::Matrix3i> box = unimodular_box(1);
  return box;
}

// Shortest vector first; b2 shortest completing a primitive pair; b3 shortest completing a basis.
Eigen::Matrix3i successive_minima_basis(const Eigen::Matrix3d& g) {
  struct Candidate {
    double norm;
    Vec3i v;
  };
  std::vector<Candidate> cands;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j)
      for (int k = -2; k <= 2; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        const Vec3i v(i, j, k);
        const Eigen::Vector3d vd = v.cast<double>();
        cands.push_back({vd.dot(g * vd), v});
      }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& l, const Candidate& r) { return l.norm < r.norm; });

  const Vec3i b1 = cands.front().v;
  Vec3i b2 = Vec3i::Zero();
  for (const auto& c : cands) {
    const Vec3i x = b1.cross(c.v);
    if (std::gcd(std::gcd(std::abs(x(0)), std::abs(x(1))), std::abs(x(2))) == 1) {
      b2 = c.v;
      break;
    }
  }
  Eigen::Matrix3i u;
  u.col(0) = b1;
  u.col(1) = b2;
  for (const auto& c : cands) {
    u.col(2) = c.v;
    const int d = det3(u);
    if (d == 1 || d == -1) return u;
  }
  return Eigen::Matrix3i::Identity();
}

// Sign flips of b1 and b3 make y12 and y23 nonnegative.
Eigen::Matrix3i fix_signs(const Eigen::Matrix3d& y) {
  Eigen::Matrix3i s = Eigen::Matrix3i::Identity();
  if (y(0, 1) < 0) s(0, 0) = -1;
  if (y(1, 2) < 0) s(2, 2) = -1;
  return s;
}

}  // namespace

Eigen::Matrix3d IwasawaCoords::reconstruct() const {
  Eigen::Matrix3d n;
  n << 1, x1, x2, 0, 1, x3, 0, 0, 1;
  const Eigen::Vector3d a(y1, y2, y3());
  return n.transpose() * a.asDiagonal() * n;
}

Eigen::Matrix3d normalize_det(const Eigen::Matrix3d& g) {
  const double det = g.determinant();
  if (!(det > 0)) throw QuarticError(ErrorCode::NotPositiveDefinite, "Gram matrix has nonpositive determinant");
  return g / std::cbrt(det);
}

IwasawaCoords iwasawa(const Eigen::Matrix3d& g) {
  const Eigen::Matrix3d y = normalize_det(g);
  IwasawaCoords v;
  v.y1 = y(0, 0);
  if (!(v.y1 > 0)) throw QuarticError(ErrorCode::NotPositiveDefinite, "leading entry is not positive");
  v.x1 = y(0, 1) / v.y1;
  v.x2 = y(0, 2) / v.y1;
  v.y2 = y(1, 1) - v.y1 * v.x1 * v.x1;
  if (!(v.y2 > 0)) throw QuarticError(ErrorCode::NotPositiveDefinite, "second pivot is not positive");
  v.x3 = (y(1, 2) - v.y1 * v.x1 * v.x2) / v.y2;
  const double y3 = y(2, 2) - v.y1 * v.x2 * v.x2 - v.y2 * v.x3 * v.x3;
  if (!(y3 > 0)) throw QuarticError(ErrorCode::NotPositiveDefinite, "third pivot is not positive");
  return v;
}

bool in_fundamental_domain(const Eigen::Matrix3d& g, double tol) {
  if (!(g.determinant() > 0) || !(g(0, 0) > 0)) return false;
  const Eigen::Matrix3d y = normalize_det(g);
  const double t = tol * scale_of(y);
  if (y(0, 0) > y(1, 1) + t || y(1, 1) > y(2, 2) + t) return false;
  if (y(0, 1) < -t || y(0, 1) > 0.5 * y(0, 0) + t) return false;
  if (y(1, 2) < -t || y(1, 2) > 0.5 * y(1, 1) + t) return false;
  if (std::abs(y(0, 2)) > 0.5 * y(0, 0) + t) return false;
  for (int e0 : {-1, 1})
    for (int e1 : {-1, 1})
      for (int e2 : {-1, 1}) {
        const Eigen::Vector3d e(e0, e1, e2);
        if (e.dot(y * e) < y(2, 2) - t) return false;
      }
  return true;
}

bool satisfies_iwasawa_bounds(const IwasawaCoords& v, double tol) {
  const double mid = v.y1 * v.x1 * v.x2 + v.y2 * v.x3;
  const double ratio = v.y1 / v.y2;
  return v.x1 >= -tol && v.x1 <= 0.5 + tol && std::abs(v.x2) <= 0.5 + tol && mid >= -tol &&
         mid <= 0.5 * (v.y1 * v.x1 * v.x1 + v.y2) + tol && v.x3 >= -0.25 * ratio - tol &&
         v.x3 <= 0.5 + 0.375 * ratio + tol;
}

Eigen::Matrix3i lll_reduce(const Eigen::Matrix3d& g, double delta) {
  Eigen::Matrix3i u = Eigen::Matrix3i::Identity();
  Eigen::Matrix3d gram = g;
  // Gram-Schmidt data from the current Gram matrix.
  auto gso = [&](Eigen::Matrix3d& mu, Eigen::Vector3d& bstar) {
    mu.setZero();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < i; ++j) {
        double s = gram(i, j);
        for (int k = 0; k < j; ++k) s -= mu(j, k) * mu(i, k) * bstar(k);
        mu(i, j) = s / bstar(j);
      }
      double s = gram(i, i);
      for (int k = 0; k < i; ++k) s -= mu(i, k) * mu(i, k) * bstar(k);
      bstar(i) = s;
    }
  };
  Eigen::Matrix3d mu;
  Eigen::Vector3d bstar;
  int k = 1;
  for (int iter = 0; k < 3 && iter < 10000; ++iter) {
    gso(mu, bstar);
    for (int j = k - 1; j >= 0; --j) {
      const double r = std::round(mu(k, j));
      if (r != 0) {
        u.col(k) -= static_cast<int>(r) * u.col(j);
        gram = congruence(g, u);
        gso(mu, bstar);
      }
    }
    if (bstar(k) >= (delta - mu(k, k - 1) * mu(k, k - 1)) * bstar(k - 1)) {
      ++k;
    } else {
      u.col(k).swap(u.col(k - 1));
      gram = congruence(g, u);
      k = std::max(k - 1, 1);
    }
  }
  return u;
}

Reduction minkowski_reduce(const Eigen::Matrix3d& g) {
  if (!(g.determinant() > 0) || !(g(0, 0) > 0))
    throw QuarticError(ErrorCode::NotPositiveDefinite, "minkowski_reduce needs a positive-definite matrix");
  Eigen::Matrix3i u = lll_reduce(g);
  for (int pass = 0; pass < 8; ++pass) {
    const Eigen::Matrix3i step = successive_minima_basis(congruence(g, u));
    u = u * step;
    if (step == Eigen::Matrix3i::Identity()) break;
  }
  u = u * fix_signs(congruence(g, u));

  Eigen::Matrix3d y = normalize_det(congruence(g, u));
  if (!in_fundamental_domain(y)) {
    // Certify by brute force over the [-2, 2] box before giving up.
    static const std::vector<Eigen::Matrix3i> wide = unimodular_box(2);
    bool found = false;
    for (const auto& w : wide) {
      const Eigen::Matrix3d cand = congruence(y, w);
      if (in_fundamental_domain(cand)) {
        u = u * w;
        y = normalize_det(cand);
        found = true;
        break;
      }
    }
    if (!found) throw QuarticError(ErrorCode::ReductionFailure, "no unimodular candidate lands in the domain");
  }

  if (boundary_slack(y) <= 1e3 * tolerance::kBoundary) {
    // Several representatives may satisfy the inequalities; pick the lexicographically smallest.
    Eigen::Matrix3i best_w = Eigen::Matrix3i::Identity();
    auto best_key = rounded_key(y);
    for (const auto& w : small_unimodulars()) {
      const Eigen::Matrix3d cand = congruence(y, w);
      if (!in_fundamental_domain(cand)) continue;
      const auto key = rounded_key(cand);
      if (key < best_key) {
        best_key = key;
        best_w = w;
      }
    }
    u = u * best_w;
    y = normalize_det(congruence(y, best_w));
  }
  return {y, u};
}

bool shapes_equivalent(const Eigen::Matrix3d& g1, const Eigen::Matrix3d& g2, double tol) {
  const Eigen::Matrix3d r1 = minkowski_reduce(g1).reduced;
  const Eigen::Matrix3d r2 = minkowski_reduce(g2).reduced;
  const double t = tol * std::max(scale_of(r1), scale_of(r2));
  if ((r1 - r2).cwiseAbs().maxCoeff() <= t) return true;
  for (const auto& w : small_unimodulars())
    if ((congruence(r1, w) - r2).cwiseAbs().maxCoeff() <= t) return true;
  return false;
}

ShapeDescriptor shape(const PureQuarticField& f) {
  ShapeDescriptor s;
  s.params = shape_params(f.counting_form);
  s.projected = project_perp(gram(f));
  const Reduction r = minkowski_reduce(to_double(s.projected));
  s.reduced = r.reduced;
  s.unimodular = r.unimodular;
  return s;
}

}  // namespace qshape
