#ifndef QSHAPE_REDUCTION_HPP
#define QSHAPE_REDUCTION_HPP

#include <Eigen/Core>

#include "qshape/gram.hpp"

namespace qshape {

namespace tolerance {
inline constexpr double kBoundary = 1e-9;
inline constexpr double kEquivalence = 1e-8;
inline constexpr double kIwasawa = 1e-12;
}  // namespace tolerance

/// Y = N^T diag(y1, y2, y3) N with N unit upper triangular (x1, x2 in row 1, x3 in row 2),
/// after scaling Y to determinant 1.
struct IwasawaCoords {
  double x1 = 0, x2 = 0, x3 = 0;
  double y1 = 1, y2 = 1;

  double y3() const { return 1.0 / (y1 * y2); }
  Eigen::Matrix3d reconstruct() const;
};

/// g / det(g)^(1/3).
Eigen::Matrix3d normalize_det(const Eigen::Matrix3d& g);

IwasawaCoords iwasawa(const Eigen::Matrix3d& g);

/// Minkowski's region: ordered diagonal, the off-diagonal bounds, and e^T Y e >= y33
/// for e in {+-1}^3, checked on the determinant-1 normalization within tol.
bool in_fundamental_domain(const Eigen::Matrix3d& g, double tol = tolerance::kBoundary);

/// The derived inequalities on Iwasawa coordinates (implied by membership).
bool satisfies_iwasawa_bounds(const IwasawaCoords& v, double tol = tolerance::kBoundary);

struct Reduction {
  Eigen::Matrix3d reduced;     // determinant 1, inside the fundamental domain
  Eigen::Matrix3i unimodular;  // u^T g u = det(g)^(1/3) * reduced
};

/// LLL (delta = 0.999) followed by a successive-minima search over coefficient
/// vectors in [-2, 2]^3. Near-boundary results are canonicalized over the
/// [-1, 1] unimodular orbit.
Reduction minkowski_reduce(const Eigen::Matrix3d& g);

bool shapes_equivalent(const Eigen::Matrix3d& g1, const Eigen::Matrix3d& g2,
                       double tol = tolerance::kEquivalence);

/// Integer transform of an LLL reduction of the Gram matrix g.
Eigen::Matrix3i lll_reduce(const Eigen::Matrix3d& g, double delta = 0.999);

struct ShapeDescriptor {
  ShapeParams params;
  Gram3 projected;
  Eigen::Matrix3d reduced;
  Eigen::Matrix3i unimodular;
};

ShapeDescriptor shape(const PureQuarticField& f);

}  // namespace qshape

#endif  // QSHAPE_REDUCTION_HPP
