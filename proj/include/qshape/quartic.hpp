#ifndef QSHAPE_QUARTIC_HPP
#define QSHAPE_QUARTIC_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qshape/arith.hpp"

namespace qshape {

enum class ErrorCode {
  FourthPowerNotFree,
  Degenerate,
  Reducible,
  ExcludedMinusFour,
  InvalidTau,
  NotPositiveDefinite,
  ReductionFailure,
  FactorizationMismatch,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// All domain failures carry a stable reason code for the CLI.
class QuarticError : public std::runtime_error {
 public:
  QuarticError(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

enum class FieldType { I, II, III, IV, V };
enum class Sign { Plus, Minus };
enum class Convention { Counting, Funakura };

std::string_view to_string(FieldType t);
FieldType parse_field_type(std::string_view s);
inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

/// Exponent of 2 in |disc|: 2 for I and V, 4 for III and IV, 8 for II.
int two_power(FieldType t);

/// m = a * b^2 * c^3 with |a|, b, c squarefree and pairwise coprime, sign carried by a.
struct NormalForm {
  std::int64_t a = 0;
  std::int64_t b = 1;
  std::int64_t c = 1;
  Sign sign = Sign::Plus;
  Convention convention = Convention::Counting;

  /// a*b^2*c^3 (signed).
  std::int64_t value() const;
  bool operator==(const NormalForm&) const = default;
};

struct FieldClass {
  FieldType type = FieldType::II;
  Sign sign = Sign::Plus;
  int k_star = 8;  // exponent of 2 in |disc|
  int r_star = 8;

  bool operator==(const FieldClass&) const = default;
};

struct RawTriple {
  std::int64_t a, b, c;
  bool operator==(const RawTriple&) const = default;
};

/// (a, b, c) read directly off the factorization of |m|; sign on a.
RawTriple raw_abc(std::int64_t m);

NormalForm counting_normal_form(std::int64_t m);
NormalForm funakura_normal_form(std::int64_t m);

/// Type from the residue of a Funakura-form integer (8 must not divide it).
FieldType type_of_residue(std::int64_t funakura_m);
FieldClass classify(std::int64_t m);

struct PureQuarticField {
  std::int64_t m = 0;
  NormalForm counting_form;
  NormalForm funakura_form;
  std::int64_t funakura_m = 0;
  FieldClass field_class;
  i128 discriminant = 0;

  static PureQuarticField from_m(std::int64_t m);
};

/// -2^k a^3 b^2 c^3 over the Funakura form.
i128 discriminant(const PureQuarticField& f);

/// True iff -256 * funakura_m^3 / disc is a positive perfect square.
bool index_square_check(const PureQuarticField& f);

/// N with |disc| <= X  <=>  |a| b^(2/3) c <= N for fields of this class.
double disc_bound_to_N(double X, const FieldClass& cls);

/// Admissible m: |m| >= 2, fourth-power free, not a square, not -4.
bool is_admissible(std::int64_t m);

}  // namespace qshape

#endif  // QSHAPE_QUARTIC_HPP
