#ifndef QSHAPE_COUNTING_HPP
#define QSHAPE_COUNTING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "qshape/arith.hpp"
#include "qshape/quadratic_real.hpp"
#include "qshape/quartic.hpp"

namespace qshape {

inline constexpr double kZeta2 = 1.6449340668482264364724151666460251892;  // pi^2 / 6

// Lattice points in the (a, c) plane

/// Area of S(M, R) = {(a, c) : c >= 1, c <= a <= R c, a c <= M}.
double area_S(double M, double R);
/// Upper bound for the boundary length of S(M, R).
double boundary_length_bound(double M, double R);
/// #{(a, c) in Z^2 : a >= c >= 1, a c < M, a <= R c}.
std::uint64_t count_S_exact(double M, double R);
/// |count - area| <= 4 (L + 1).
bool lipschitz_check(double M, double R);

/// Sum over b <= R2 of count_S_exact(N / b^(2/3), R1).
std::uint64_t count_R_exact(double N, double R1, double R2);
/// (N/2) log R1 * sum_{n <= R2} n^(-2/3).
double predicted_count_R(double N, double R1, double R2);

// Carefree triples

bool is_l_carefree(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t l);
bool is_carefree(std::uint64_t a, std::uint64_t b, std::uint64_t c);
/// (1 - 1/l)^3 (1 + 3/l), exact.
Rational carefree_density(std::uint64_t l);
/// #{(a, b, c) in (Z/l^2)^3 : l^2 divides none of ab, bc, ca}.
std::uint64_t brute_force_A(std::uint64_t l);

// Local densities and the b-direction weights

/// n^(-2/3) prod_{l | n} (l - 1)/(l + 1) for squarefree n, else 0.
double alpha(std::uint64_t n);
/// sum_{n <= floor(x)} alpha(n), compensated.
double psi(double x);

/// #{(a, c) in (Z/32)^2 : a b^2 c^3 = tau mod 32}. Throws InvalidTau if 8 | tau.
int n_tau(std::uint64_t b, int tau);

/// Modulus attached to a type: 8, 4, 16, 32, 32 for I..V.
int type_modulus(FieldType t);
/// Residues mod type_modulus(t) making up the type.
std::vector<int> type_residues(FieldType t);
/// The same residue set lifted to Z/32 (8 never divides its members).
std::vector<int> type_residues_mod32(FieldType t);

/// #{(a, c) mod M : a b^2 c^3 in the residue set of t} / M^2, M = type_modulus(t).
Rational M_star(FieldType t, std::uint64_t b);
double psi_star(FieldType t, double x);
double psi_tau(int tau, double x);

/// Rectangle of shape parameters (|a|/c, b). The b-range covers the integers in
/// [R2lo, R2hi]; the ratio range is closed unless r1_hi_open is set.
struct Rect {
  double R1lo = 1, R1hi = 1, R2lo = 1, R2hi = 1;
  bool r1_hi_open = false;

  void validate() const;
  bool contains_ratio(std::int64_t a, std::int64_t c) const;
  std::uint64_t b_min() const;
  std::uint64_t b_max() const;
};

/// 1/2 (log R1hi - log R1lo) (psi(R2hi) - psi(ceil(R2lo) - 1)).
double mu_hat_box(const Rect& r);

/// Precomputed M_*(b), n_tau(b) and carefree densities; read-only after construction.
struct DensityTable {
  std::uint64_t max_b = 0;
  std::map<FieldType, std::vector<Rational>> m_star;  // index b, entry 0 unused
  std::map<int, std::vector<int>> n_tau;               // tau -> index b
  std::map<std::uint64_t, Rational> d_l;

  static DensityTable build(std::uint64_t max_b, std::uint64_t max_l);
};

// Enumeration

/// Integer bound for a^3 b^2 c^3: floor(N^3), exact when N is an integer.
u128 cube_bound(double N);

struct EnumerationFilter {
  std::optional<std::set<FieldType>> types;
  std::optional<std::set<Sign>> signs;
  std::optional<Rect> rect;
  std::optional<int> tau;  // residue of the signed m mod 32
};

/// One enumerated field, described by its counting-form triple.
struct FieldRecord {
  std::int64_t m = 0;
  std::int64_t a = 0;  // signed
  std::int64_t b = 1;
  std::int64_t c = 1;
  Sign sign = Sign::Plus;
  FieldType type = FieldType::II;
  i128 disc = 0;
  Rational lambda1_sq;  // c/|a|

  bool operator==(const FieldRecord&) const = default;
};

struct Enumeration {
  std::vector<FieldRecord> fields;  // sorted by (|disc|, m)
  std::uint64_t excluded_8divm = 0;
  std::uint64_t excluded_reducible = 0;
};

/// Fields with |a| b^(2/3) c <= N (a^3 b^2 c^3 <= bound exactly), carefree counting triples.
Enumeration enumerate_fields(u128 bound, const EnumerationFilter& filter, unsigned threads = 1);
Enumeration enumerate_fields(double N, const EnumerationFilter& filter, unsigned threads = 1);
/// Fields with |disc| <= X: the per-class bound floor(X / 2^k) is applied to each type.
Enumeration enumerate_by_discriminant(double X, const EnumerationFilter& filter, unsigned threads = 1);

struct CountReport {
  std::string label;
  double N = 0;
  std::optional<double> X;
  Rect rect;
  std::optional<int> tau;
  std::optional<FieldType> type;
  std::optional<Sign> sign;
  std::uint64_t empirical = 0;
  double predicted = 0;       // predicted count
  double normalization = 0;   // divisor used for ratio
  double ratio = 0;           // empirical / normalization
  double predicted_ratio = 0; // predicted / normalization
  std::optional<double> literal_normalization;  // 2^(r/3) X^(1/3), for comparison
  std::uint64_t excluded_8divm = 0;

  double relative_deviation() const;
};

/// #C^tau(N, R1, R2): carefree positive triples with a b^2 c^3 = tau mod 32.
CountReport count_C_tau(double N, double R1, double R2, int tau, unsigned threads = 1);

/// Fields of (type, sign) with |disc| <= X and (|a|/c, b) in rect, against the limit law.
CountReport theorem_ratio_report(FieldType type, Sign sign, double X, const Rect& rect, unsigned threads = 1);

struct NonCarefreeReport {
  std::uint64_t total = 0;
  std::uint64_t failing = 0;
  double fraction = 0;
  double envelope = 0;  // K (l^(-4/3) + N^(-1/2))
};

/// Share of R_{Z^3}(N, R1, R2) that is not l-carefree.
NonCarefreeReport non_carefree_fraction(double N, std::uint64_t l, double R1 = 4, double R2 = 3, double K = 1);

}  // namespace qshape

#endif  // QSHAPE_COUNTING_HPP
