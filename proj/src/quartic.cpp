#include "qshape/quartic.hpp"

#include <cmath>
#include <cstdlib>

namespace qshape {

namespace {

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r))
    throw QuarticError(ErrorCode::InvalidArgument, "integer overflow in normal form");
  return r;
}

i128 checked_mul128(i128 x, i128 y) {
  i128 r;
  if (__builtin_mul_overflow(x, y, &r))
    throw QuarticError(ErrorCode::InvalidArgument, "integer overflow in discriminant");
  return r;
}

std::int64_t abc_value(std::int64_t a, std::int64_t b, std::int64_t c) {
  return checked_mul(checked_mul(a, checked_mul(b, b)), checked_mul(c, checked_mul(c, c)));
}

// The fourth-power-free part of m^3 is (sign*c) * b^2 * |a|^3.
RawTriple cube_swap(const RawTriple& t) {
  const std::int64_t s = t.a < 0 ? -1 : 1;
  return {s * t.c, t.b, std::llabs(t.a)};
}

void check_excluded(std::int64_t m, const RawTriple& t) {
  if (m == -4) throw QuarticError(ErrorCode::ExcludedMinusFour, "excluded case X^4 + 4 (m = -4)");
  if (t.a == 1)
    throw QuarticError(ErrorCode::Reducible,
                       "m = " + std::to_string(m) + " is a perfect square; X^4 - m is reducible");
}

NormalForm to_form(const RawTriple& t, Convention conv) {
  return {t.a, t.b, t.c, t.a < 0 ? Sign::Minus : Sign::Plus, conv};
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FourthPowerNotFree: return "FourthPowerNotFree";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::ExcludedMinusFour: return "ExcludedMinusFour";
    case ErrorCode::InvalidTau: return "InvalidTau";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::ReductionFailure: return "ReductionFailure";
    case ErrorCode::FactorizationMismatch: return "FactorizationMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string_view to_string(FieldType t) {
  switch (t) {
    case FieldType::I: return "I";
    case FieldType::II: return "II";
    case FieldType::III: return "III";
    case FieldType::IV: return "IV";
    case FieldType::V: return "V";
  }
  return "?";
}

FieldType parse_field_type(std::string_view s) {
  if (s == "I") return FieldType::I;
  if (s == "II") return FieldType::II;
  if (s == "III") return FieldType::III;
  if (s == "IV") return FieldType::IV;
  if (s == "V") return FieldType::V;
  throw QuarticError(ErrorCode::InvalidArgument, "unknown field type '" + std::string(s) + "'");
}

int two_power(FieldType t) {
  switch (t) {
    case FieldType::I:
    case FieldType::V: return 2;
    case FieldType::III:
    case FieldType::IV: return 4;
    case FieldType::II: return 8;
  }
  return 8;
}

std::int64_t NormalForm::value() const { return abc_value(a, b, c); }

RawTriple raw_abc(std::int64_t m) {
  if (m == 0 || m == 1 || m == -1 || m == INT64_MIN)
    throw QuarticError(ErrorCode::Degenerate, "|m| must be at least 2");
  std::int64_t a = 1, b = 1, c = 1;
  for (auto [p, e] : factor(static_cast<std::uint64_t>(std::llabs(m))).factors) {
    const auto q = static_cast<std::int64_t>(p);
    switch (e) {
      case 1: a *= q; break;
      case 2: b *= q; break;
      case 3: c *= q; break;
      default:
        throw QuarticError(ErrorCode::FourthPowerNotFree,
                           "m = " + std::to_string(m) + " is divisible by " + std::to_string(p) + "^4");
    }
  }
  return {m < 0 ? -a : a, b, c};
}

NormalForm counting_normal_form(std::int64_t m) {
  RawTriple t = raw_abc(m);
  if (std::llabs(t.a) < t.c) t = cube_swap(t);
  check_excluded(m, t);
  return to_form(t, Convention::Counting);
}

NormalForm funakura_normal_form(std::int64_t m) {
  RawTriple t = raw_abc(m);
  if (t.c % 2 == 0) t = cube_swap(t);
  if (t.a % 2 != 0 && std::llabs(t.a) < t.c) t = cube_swap(t);
  check_excluded(m, t);
  return to_form(t, Convention::Funakura);
}

FieldType type_of_residue(std::int64_t funakura_m) {
  const std::int64_t r = mod_floor(funakura_m, 32);
  if (r % 8 == 1) return FieldType::I;
  if (r % 4 == 2 || r % 4 == 3) return FieldType::II;
  if (r % 16 == 4 || r % 8 == 5) return FieldType::III;
  if (r == 12) return FieldType::IV;
  if (r == 28) return FieldType::V;
  throw QuarticError(ErrorCode::InvalidArgument,
                     "residue " + std::to_string(r) + " mod 32 is divisible by 8; no type applies");
}

FieldClass classify(std::int64_t m) {
  const NormalForm nf = funakura_normal_form(m);
  FieldClass cls;
  cls.type = type_of_residue(nf.value());
  cls.sign = m < 0 ? Sign::Minus : Sign::Plus;
  cls.k_star = two_power(cls.type);
  cls.r_star = cls.k_star;
  return cls;
}

i128 discriminant(const PureQuarticField& f) {
  const NormalForm& nf = f.funakura_form;
  const i128 a = nf.a, b = nf.b, c = nf.c;
  i128 v = checked_mul128(checked_mul128(a * a, a), b * b);
  v = checked_mul128(v, checked_mul128(c * c, c));
  return -checked_mul128(v, i128{1} << f.field_class.k_star);
}

PureQuarticField PureQuarticField::from_m(std::int64_t m) {
  PureQuarticField f;
  f.m = m;
  f.counting_form = counting_normal_form(m);
  f.funakura_form = funakura_normal_form(m);
  f.funakura_m = f.funakura_form.value();
  f.field_class = classify(m);
  f.discriminant = qshape::discriminant(f);
  return f;
}

bool index_square_check(const PureQuarticField& f) {
  const i128 fm = f.funakura_m;
  i128 num;
  if (__builtin_mul_overflow(fm * fm, fm, &num) || __builtin_mul_overflow(num, i128{-256}, &num))
    throw QuarticError(ErrorCode::InvalidArgument, "overflow in index check");
  if (f.discriminant == 0 || num % f.discriminant != 0) return false;
  const i128 ratio = num / f.discriminant;
  if (ratio <= 0) return false;
  if (ratio > static_cast<i128>(UINT64_MAX)) {
    // ratio = index^2 with index < 2^64 whenever the field is valid
    auto r = static_cast<u128>(std::sqrt(static_cast<long double>(ratio)));
    while (r * r > static_cast<u128>(ratio)) --r;
    while ((r + 1) * (r + 1) <= static_cast<u128>(ratio)) ++r;
    return r * r == static_cast<u128>(ratio);
  }
  const std::uint64_t root = isqrt(static_cast<std::uint64_t>(ratio));
  return static_cast<i128>(root) * root == ratio;
}

double disc_bound_to_N(double X, const FieldClass& cls) {
  return std::cbrt(X / std::ldexp(1.0, cls.k_star));
}

bool is_admissible(std::int64_t m) {
  try {
    (void)PureQuarticField::from_m(m);
    return true;
  } catch (const QuarticError&) {
    return false;
  }
}

}  // namespace qshape
