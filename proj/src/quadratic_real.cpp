#include "qshape/quadratic_real.hpp"

#include <cmath>
#include <ostream>

#include "qshape/arith.hpp"
#include "qshape/quartic.hpp"

namespace qshape {

namespace {

std::string rational_token(const Rational& r) {
  return r.get_den() == 1 ? r.get_num().get_str() : r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view s) {
  if (s.empty()) throw QuarticError(ErrorCode::InvalidArgument, "empty rational token");
  Rational r;
  if (r.set_str(std::string(s), 10) != 0)
    throw QuarticError(ErrorCode::InvalidArgument, "bad rational token '" + std::string(s) + "'");
  r.canonicalize();
  return r;
}

}  // namespace

QuadraticReal::QuadraticReal(Rational x, Rational y, std::int64_t d) : x_(std::move(x)), y_(std::move(y)) {
  x_.canonicalize();
  y_.canonicalize();
  if (d <= 0) throw QuarticError(ErrorCode::InvalidArgument, "radicand must be positive");
  auto [k, kernel] = split_square(static_cast<std::uint64_t>(d));
  y_ *= static_cast<unsigned long>(k);
  d_ = static_cast<std::int64_t>(kernel);
  if (d_ == 1) {
    x_ += y_;
    y_ = 0;
  }
  if (sgn(y_) == 0) d_ = 1;
}

QuadraticReal QuadraticReal::surd(const Rational& coeff, std::uint64_t n) {
  if (n == 0) return {};
  return {Rational(0), coeff, static_cast<std::int64_t>(n)};
}

std::int64_t QuadraticReal::merged_radicand(const QuadraticReal& o) const {
  if (sgn(o.y_) == 0) return d_;
  if (sgn(y_) == 0) return o.d_;
  if (d_ != o.d_)
    throw QuarticError(ErrorCode::InvalidArgument, "mixed radicands sqrt(" + std::to_string(d_) + ") and sqrt(" +
                                                       std::to_string(o.d_) + ")");
  return d_;
}

QuadraticReal& QuadraticReal::operator+=(const QuadraticReal& o) {
  d_ = merged_radicand(o);
  x_ += o.x_;
  y_ += o.y_;
  if (sgn(y_) == 0) d_ = 1;
  return *this;
}

QuadraticReal& QuadraticReal::operator-=(const QuadraticReal& o) {
  d_ = merged_radicand(o);
  x_ -= o.x_;
  y_ -= o.y_;
  if (sgn(y_) == 0) d_ = 1;
  return *this;
}

QuadraticReal& QuadraticReal::operator*=(const QuadraticReal& o) {
  const std::int64_t d = merged_radicand(o);
  Rational x = x_ * o.x_ + y_ * o.y_ * static_cast<long>(d);
  Rational y = x_ * o.y_ + y_ * o.x_;
  x_ = std::move(x);
  y_ = std::move(y);
  d_ = sgn(y_) == 0 ? 1 : d;
  return *this;
}

QuadraticReal& QuadraticReal::operator/=(const QuadraticReal& o) {
  const Rational norm = o.x_ * o.x_ - o.y_ * o.y_ * static_cast<long>(o.d_);
  if (sgn(norm) == 0) throw QuarticError(ErrorCode::InvalidArgument, "division by zero in Q(sqrt(d))");
  QuadraticReal inv(Rational(o.x_ / norm), Rational(-o.y_ / norm), o.d_);
  return *this *= inv;
}

QuadraticReal QuadraticReal::operator-() const {
  QuadraticReal r = *this;
  r.x_ = -r.x_;
  r.y_ = -r.y_;
  return r;
}

bool operator==(const QuadraticReal& l, const QuadraticReal& r) {
  if (l.x_ != r.x_ || l.y_ != r.y_) return false;
  return sgn(l.y_) == 0 || l.d_ == r.d_;
}

int QuadraticReal::sign() const {
  const int sx = sgn(x_), sy = sgn(y_);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  const Rational lhs = x_ * x_;
  const Rational rhs = y_ * y_ * static_cast<long>(d_);
  return cmp(lhs, rhs) > 0 ? sx : sy;
}

long double QuadraticReal::to_long_double() const {
  // mpf with 256 bits, printed to 40 digits, keeps full long double precision.
  auto conv = [&](const Rational& r) -> long double {
    mp_exp_t exp = 0;
    mpf_class f(r, 256);
    std::string digits = f.get_str(exp, 10, 40);
    if (digits.empty() || digits == "0") return 0.0L;
    bool neg = digits[0] == '-';
    if (neg) digits.erase(0, 1);
    const std::string text = (neg ? "-0." : "0.") + digits + "e" + std::to_string(exp);
    return std::strtold(text.c_str(), nullptr);
  };
  const long double x = conv(x_);
  if (sgn(y_) == 0) return x;
  const long double root = std::sqrt(static_cast<long double>(d_));
  const long double ys = conv(y_) * root;
  if (sgn(x_) == 0 || sgn(x_) == sgn(y_)) return x + ys;
  // x and y*sqrt(d) cancel: use (x^2 - d y^2) / (x - y sqrt(d)).
  const Rational norm = x_ * x_ - y_ * y_ * static_cast<long>(d_);
  return conv(norm) / (x - ys);
}

double QuadraticReal::to_double() const { return static_cast<double>(to_long_double()); }

std::string QuadraticReal::to_string() const {
  const int sx = sgn(x_), sy = sgn(y_);
  if (sy == 0) return rational_token(x_);
  std::string out;
  if (sx != 0) out = rational_token(x_);
  Rational ay = abs(y_);
  std::string coeff = ay == 1 ? std::string() : rational_token(ay) + "*";
  if (sy < 0)
    out += "-";
  else if (sx != 0)
    out += "+";
  out += coeff + "sqrt(" + std::to_string(d_) + ")";
  return out;
}

QuadraticReal QuadraticReal::parse(std::string_view text) {
  const auto pos = text.find("sqrt(");
  if (pos == std::string_view::npos) return {parse_rational(text)};
  if (text.back() != ')') throw QuarticError(ErrorCode::InvalidArgument, "bad surd token");
  const std::string_view inner = text.substr(pos + 5, text.size() - pos - 6);
  const std::int64_t d = std::stoll(std::string(inner));
  std::string_view head = text.substr(0, pos);  // "x+y*" / "x-" / "y*" / "-" / ""
  if (!head.empty() && head.back() == '*') head.remove_suffix(1);
  // split head at the sign that separates x from y (not a leading sign)
  std::size_t split = std::string_view::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if (head[i] == '+' || head[i] == '-') {
      split = i;
      break;
    }
  }
  Rational x = 0;
  std::string_view ytext = head;
  if (split != std::string_view::npos) {
    x = parse_rational(head.substr(0, split));
    ytext = head.substr(split);
    if (ytext.front() == '+') ytext.remove_prefix(1);
  }
  Rational y;
  if (ytext.empty())
    y = 1;
  else if (ytext == "-")
    y = -1;
  else
    y = parse_rational(ytext);
  return {x, y, d};
}

std::ostream& operator<<(std::ostream& os, const QuadraticReal& q) { return os << q.to_string(); }

}  // namespace qshape
