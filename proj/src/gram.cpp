#include "qshape/gram.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>

namespace qshape {

namespace {

Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Matrix4<QuadraticReal> to_quadratic(const RationalMatrix4& c) {
  Matrix4<QuadraticReal> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = QuadraticReal(c(i, j));
  return out;
}

// Integral basis written as coefficients of (1, beta, beta^2, beta^3), transcribed
// from the integral basis table rather than derived from change_of_basis.
using PowerBasisRow = std::array<long double, 4>;

std::array<PowerBasisRow, 4> integral_basis_in_powers(const PureQuarticField& f) {
  const auto& nf = f.funakura_form;
  const long double a = static_cast<long double>(nf.a);
  const long double b = static_cast<long double>(nf.b);
  const long double c = static_cast<long double>(nf.c);
  const PowerBasisRow one{1, 0, 0, 0};
  const PowerBasisRow alpha{0, 0, 1 / (b * c), 0};
  const PowerBasisRow beta{0, 1, 0, 0};
  const PowerBasisRow gamma{0, 0, 0, 1 / (b * c * c)};
  auto comb = [](std::initializer_list<std::pair<long double, PowerBasisRow>> terms, long double den) {
    PowerBasisRow r{0, 0, 0, 0};
    for (const auto& [w, row] : terms)
      for (int k = 0; k < 4; ++k) r[k] += w * row[k];
    for (auto& v : r) v /= den;
    return r;
  };
  switch (f.field_class.type) {
    case FieldType::I:
      return {one, comb({{1, one}, {1, alpha}}, 2), beta,
              comb({{a * b, one}, {1, alpha}, {b, beta}, {1, gamma}}, 4)};
    case FieldType::II:
      return {one, alpha, beta, gamma};
    case FieldType::III:
      return {one, comb({{1, one}, {1, alpha}}, 2), beta, comb({{1, beta}, {1, gamma}}, 2)};
    case FieldType::IV:
      return {one, alpha, comb({{1, one}, {1, alpha}, {1, beta}}, 2), comb({{1, beta}, {1, gamma}}, 2)};
    case FieldType::V:
      return {one, alpha, comb({{1, one}, {1, alpha}, {1, beta}}, 2),
              comb({{4, alpha}, {b, beta}, {2, gamma}}, 8)};
  }
  return {one, alpha, beta, gamma};
}

}  // namespace

Gram4 gram_type_ii(const PureQuarticField& f) {
  const auto& nf = f.funakura_form;
  const long abs_a = std::labs(nf.a);
  const auto d = static_cast<std::uint64_t>(abs_a * nf.c);
  Gram4 g = Gram4::Zero();
  g(0, 0) = 4;
  g(1, 1) = QuadraticReal(q(4 * abs_a * nf.c));
  g(2, 2) = QuadraticReal::surd(q(4 * nf.b * nf.c), d);
  g(3, 3) = QuadraticReal::surd(q(4 * abs_a * nf.b), d);
  return g;
}

RationalMatrix4 change_of_basis(FieldType type, std::int64_t a, std::int64_t b) {
  RationalMatrix4 c = RationalMatrix4::Identity();
  const Rational half = q(1, 2);
  switch (type) {
    case FieldType::I:
      c.row(1) << half, half, 0, 0;
      c.row(3) << q(a * b, 4), q(1, 4), q(b, 4), q(1, 4);
      break;
    case FieldType::II:
      break;
    case FieldType::III:
      c.row(1) << half, half, 0, 0;
      c.row(3) << 0, 0, half, half;
      break;
    case FieldType::IV:
      c.row(2) << half, half, half, 0;
      c.row(3) << 0, 0, half, half;
      break;
    case FieldType::V:
      c.row(2) << half, half, half, 0;
      c.row(3) << 0, half, q(b, 8), q(1, 4);
      break;
  }
  return c;
}

Gram4 gram(const PureQuarticField& f) {
  const auto& nf = f.funakura_form;
  const Matrix4<QuadraticReal> c = to_quadratic(change_of_basis(f.field_class.type, nf.a, nf.b));
  return c * gram_type_ii(f) * c.transpose();
}

Eigen::Matrix4d gram_numeric(const PureQuarticField& f) {
  using Complex = std::complex<long double>;
  const long double r = std::pow(std::fabs(static_cast<long double>(f.funakura_m)), 0.25L);
  const long double pi = std::acos(-1.0L);
  const Complex beta0 = f.funakura_m > 0 ? Complex(r, 0) : std::polar(r, pi / 4);
  const std::array<Complex, 4> units{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};

  const auto basis = integral_basis_in_powers(f);
  // embedded(k, e) = value of basis element k under the embedding beta -> i^e beta0
  std::array<std::array<Complex, 4>, 4> embedded{};
  for (int e = 0; e < 4; ++e) {
    const Complex b1 = units[e] * beta0;
    const std::array<Complex, 4> powers{Complex(1, 0), b1, b1 * b1, b1 * b1 * b1};
    for (int k = 0; k < 4; ++k) {
      Complex v(0, 0);
      for (int p = 0; p < 4; ++p) v += basis[k][p] * powers[p];
      embedded[k][e] = v;
    }
  }
  Eigen::Matrix4d g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Complex s(0, 0);
      for (int e = 0; e < 4; ++e) s += embedded[i][e] * std::conj(embedded[j][e]);
      g(i, j) = static_cast<double>(s.real());
    }
  return g;
}

std::string TorusCheck::describe() const {
  if (ok) return "ok";
  return "entry (" + std::to_string(row + 1) + "," + std::to_string(col + 1) + "): projected " +
         projected.to_string() + " != factored " + factored.to_string();
}

TorusCheck check_torus_factorization(const PureQuarticField& f) {
  const auto& nf = f.funakura_form;
  const long abs_a = std::labs(nf.a);
  const auto d = static_cast<std::uint64_t>(abs_a * nf.c);
  const Gram3 projected = project_perp(gram(f));

  const Matrix3<QuadraticReal> c3 =
      to_quadratic(change_of_basis(f.field_class.type, nf.a, nf.b)).bottomRightCorner<3, 3>();
  Matrix3<QuadraticReal> diag = Matrix3<QuadraticReal>::Zero();
  diag(0, 0) = QuadraticReal(q(1, nf.b));
  diag(1, 1) = QuadraticReal::surd(q(1, abs_a), d);  // sqrt(c/|a|)
  diag(2, 2) = QuadraticReal::surd(q(1, nf.c), d);   // sqrt(|a|/c)
  const QuadraticReal scale(q(4 * abs_a * nf.b * nf.c));
  const Gram3 factored = (c3 * diag * c3.transpose()).unaryExpr([&](const QuadraticReal& v) { return scale * v; });

  TorusCheck out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (projected(i, j) != factored(i, j)) {
        out.ok = false;
        out.row = i;
        out.col = j;
        out.projected = projected(i, j);
        out.factored = factored(i, j);
        return out;
      }
  return out;
}

bool torus_factorization_check(const PureQuarticField& f) { return check_torus_factorization(f).ok; }

void require_torus_factorization(const PureQuarticField& f) {
  const TorusCheck c = check_torus_factorization(f);
  if (!c.ok)
    throw QuarticError(ErrorCode::FactorizationMismatch,
                       "torus factorization failed for m = " + std::to_string(f.m) + ": " + c.describe());
}

double ShapeParams::lambda1() const { return std::sqrt(lambda1_sq.get_d()); }

ShapeParams shape_params(const NormalForm& nf) {
  return {q(nf.c, std::labs(nf.a)), q(1, nf.b)};
}

}  // namespace qshape
