#ifndef QSHAPE_QUADRATIC_REAL_HPP
#define QSHAPE_QUADRATIC_REAL_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <Eigen/Core>

namespace qshape {

using Rational = mpq_class;

/// Exact x + y*sqrt(d), x and y rational, d a squarefree positive integer.
///
/// Elements with y == 0 are plain rationals and combine with any radicand;
/// two elements with nonzero surd parts must share d. Construction pulls square
/// factors out of d, and d == 1 folds y into x.
class QuadraticReal {
 public:
  QuadraticReal() = default;
  QuadraticReal(int v) : x_(v) {}  // NOLINT(google-explicit-constructor)
  QuadraticReal(long v) : x_(v) {}  // NOLINT(google-explicit-constructor)
  QuadraticReal(long long v) : x_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  QuadraticReal(Rational x) : x_(std::move(x)) { x_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  QuadraticReal(Rational x, Rational y, std::int64_t d);

  /// coeff * sqrt(n) for any n >= 0.
  static QuadraticReal surd(const Rational& coeff, std::uint64_t n);

  const Rational& rational_part() const { return x_; }
  const Rational& surd_part() const { return y_; }
  std::int64_t radicand() const { return d_; }
  bool is_rational() const { return sgn(y_) == 0; }

  /// Exact sign via integer comparison of x^2 and d*y^2.
  int sign() const;
  /// Evaluated so that cancellation between the two parts does not lose digits.
  double to_double() const;
  long double to_long_double() const;

  /// "p/q+r/s*sqrt(d)" with no whitespace; "0" for zero.
  std::string to_string() const;
  static QuadraticReal parse(std::string_view text);

  QuadraticReal& operator+=(const QuadraticReal& o);
  QuadraticReal& operator-=(const QuadraticReal& o);
  QuadraticReal& operator*=(const QuadraticReal& o);
  QuadraticReal& operator/=(const QuadraticReal& o);

  friend QuadraticReal operator+(QuadraticReal l, const QuadraticReal& r) { return l += r; }
  friend QuadraticReal operator-(QuadraticReal l, const QuadraticReal& r) { return l -= r; }
  friend QuadraticReal operator*(QuadraticReal l, const QuadraticReal& r) { return l *= r; }
  friend QuadraticReal operator/(QuadraticReal l, const QuadraticReal& r) { return l /= r; }
  QuadraticReal operator-() const;

  friend bool operator==(const QuadraticReal& l, const QuadraticReal& r);
  friend bool operator!=(const QuadraticReal& l, const QuadraticReal& r) { return !(l == r); }
  friend bool operator<(const QuadraticReal& l, const QuadraticReal& r) { return (l - r).sign() < 0; }
  friend bool operator>(const QuadraticReal& l, const QuadraticReal& r) { return r < l; }
  friend bool operator<=(const QuadraticReal& l, const QuadraticReal& r) { return !(r < l); }
  friend bool operator>=(const QuadraticReal& l, const QuadraticReal& r) { return !(l < r); }

 private:
  std::int64_t merged_radicand(const QuadraticReal& o) const;

  Rational x_{0};
  Rational y_{0};
  std::int64_t d_ = 1;
};

std::ostream& operator<<(std::ostream& os, const QuadraticReal& q);

inline double quad_eval(const QuadraticReal& q) { return q.to_double(); }

// Eigen hooks. Only the arithmetic needed by fixed-size products is supported.
inline const QuadraticReal& conj(const QuadraticReal& q) { return q; }
inline const QuadraticReal& real(const QuadraticReal& q) { return q; }
inline QuadraticReal imag(const QuadraticReal&) { return 0; }
inline QuadraticReal abs2(const QuadraticReal& q) { return q * q; }

}  // namespace qshape

namespace Eigen {

template <>
struct NumTraits<qshape::QuadraticReal> : GenericNumTraits<qshape::QuadraticReal> {
  using Real = qshape::QuadraticReal;
  using NonInteger = qshape::QuadraticReal;
  using Nested = qshape::QuadraticReal;
  using Literal = qshape::QuadraticReal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  // exact scalars print through operator<<
  static constexpr int digits10() { return 0; }
  static constexpr int max_digits10() { return 0; }
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 16
  };
  // exact scalars print through operator<<
  static constexpr int digits10() { return 0; }
  static constexpr int max_digits10() { return 0; }
};

}  // namespace Eigen

#endif  // QSHAPE_QUADRATIC_REAL_HPP
