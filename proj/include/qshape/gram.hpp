#ifndef QSHAPE_GRAM_HPP
#define QSHAPE_GRAM_HPP

#include <optional>
#include <string>

#include <Eigen/Core>

#include "qshape/quadratic_real.hpp"
#include "qshape/quartic.hpp"

namespace qshape {

template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

/// Gram matrix of an integral basis under the Minkowski embedding, exact.
using Gram4 = Matrix4<QuadraticReal>;
/// Gram matrix of the trace-zero projection, exact.
using Gram3 = Matrix3<QuadraticReal>;
using RationalMatrix4 = Matrix4<Rational>;

/// Determinant by cofactor expansion; exact for exact scalars (n <= 4).
template <typename Derived>
typename Derived::Scalar cofactor_determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Scalar det(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const Scalar term = m(0, j) * cofactor_determinant(minor);
    if (j % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

/// Sylvester's criterion with exact minor signs.
template <typename Derived>
bool is_positive_definite_exact(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index k = 1; k <= m.rows(); ++k)
    if (cofactor_determinant(m.topLeftCorner(k, k).eval()).sign() <= 0) return false;
  return true;
}

/// Gram matrix of the projections of basis vectors 2..n onto the orthogonal
/// complement of the first basis vector (the image of 1):
/// G3(i,j) = g(i+1,j+1) - g(i+1,0) g(0,j+1) / g(0,0).
template <typename Scalar>
Matrix3<Scalar> project_perp(const Matrix4<Scalar>& g) {
  Matrix3<Scalar> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = g(i + 1, j + 1) - g(i + 1, 0) * g(0, j + 1) / g(0, 0);
  return out;
}

template <typename Derived>
Eigen::Matrix<double, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> to_double(
    const Eigen::MatrixBase<Derived>& m) {
  return m.unaryExpr([](const QuadraticReal& q) { return q.to_double(); });
}

/// diag(4, 4|alpha|^2, 4|beta|^2, 4|gamma|^2) for the basis (1, alpha, beta, gamma),
/// exact in Q(sqrt(|a| c)), (a, b, c) the Funakura form.
Gram4 gram_type_ii(const PureQuarticField& f);

/// Rows express the integral basis (1, lambda, mu, nu) in (1, alpha, beta, gamma).
RationalMatrix4 change_of_basis(FieldType type, std::int64_t a, std::int64_t b);

/// C * gram_type_ii * C^T.
Gram4 gram(const PureQuarticField& f);

/// Independent floating oracle: evaluates the integral basis at the four
/// complex embeddings and forms the Hermitian Gram matrix.
Eigen::Matrix4d gram_numeric(const PureQuarticField& f);

struct TorusCheck {
  bool ok = true;
  int row = -1;
  int col = -1;
  QuadraticReal projected;
  QuadraticReal factored;
  std::string describe() const;
};

/// Checks project_perp(gram(f)) == 4|a|bc * C' diag(1/b, sqrt(c/|a|), sqrt(|a|/c)) C'^T exactly,
/// C' the lower-right 3x3 block of the change of basis. Reports the first differing entry.
TorusCheck check_torus_factorization(const PureQuarticField& f);
bool torus_factorization_check(const PureQuarticField& f);
/// Throws FactorizationMismatch instead of returning false.
void require_torus_factorization(const PureQuarticField& f);

struct ShapeParams {
  Rational lambda1_sq;  // c/|a|
  Rational lambda2;     // 1/b
  double lambda1() const;
};

/// (sqrt(c/|a|), 1/b) from a counting-form triple.
ShapeParams shape_params(const NormalForm& nf);

}  // namespace qshape

#endif  // QSHAPE_GRAM_HPP
