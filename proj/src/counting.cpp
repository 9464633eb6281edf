#include "qshape/counting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

namespace qshape {

namespace {

// Kahan-Babuska compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

std::uint64_t floor_u64(double x) { return x < 1 ? 0 : static_cast<std::uint64_t>(std::floor(x)); }

int residue32(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  const std::uint64_t ar = a % 32, br = b % 32, cr = c % 32;
  return static_cast<int>((ar * (br * br % 32) % 32) * (cr * cr % 32 * cr % 32) % 32);
}

int pair_count(std::uint64_t b, int modulus, const std::vector<int>& residues) {
  const std::int64_t bb = static_cast<std::int64_t>(b % modulus);
  std::vector<bool> hit(modulus, false);
  for (int r : residues) hit[r] = true;
  int n = 0;
  for (std::int64_t a = 0; a < modulus; ++a)
    for (std::int64_t c = 0; c < modulus; ++c)
      if (hit[(a * bb % modulus * bb % modulus) * (c * c % modulus * c % modulus) % modulus]) ++n;
  return n;
}

struct ScanBox {
  u128 bound = 0;  // a^3 b^2 c^3 <= bound
  std::uint64_t b_lo = 1;
  std::uint64_t b_hi = 0;  // 0: unbounded
  std::optional<Rect> rect;
};

u128 cube(u128 v) { return v * v * v; }

// Calls visit(acc, a, b, c) for every carefree triple with a >= c in the box.
// Threads take interleaved c-stripes; accumulators are merged in thread order.
template <typename Acc, typename Visit>
Acc scan_carefree(const ScanBox& box, unsigned threads, Visit visit) {
  if (box.bound == 0) return Acc{};
  const std::uint64_t n_root = icbrt(box.bound);  // a c b^(2/3) <= N
  std::uint64_t a_limit = n_root;
  if (box.rect) {
    const double r = box.rect->R1hi * static_cast<double>(n_root);
    a_limit = std::min<std::uint64_t>(a_limit, static_cast<std::uint64_t>(std::sqrt(r)) + 2);
  }
  std::uint64_t b_hi = isqrt(static_cast<std::uint64_t>(std::min<u128>(box.bound, ~std::uint64_t{0})));
  if (box.b_hi != 0) b_hi = std::min(b_hi, box.b_hi);
  const SquarefreeSieve sieve(std::max(a_limit, std::min<std::uint64_t>(b_hi, 100000000)));

  threads = std::max(1u, threads);
  std::vector<Acc> partial(threads);
  auto worker = [&](unsigned t) {
    Acc& acc = partial[t];
    for (std::uint64_t b = box.b_lo; b <= b_hi; ++b) {
      if (!sieve(b)) continue;
      const u128 b2 = static_cast<u128>(b) * b;
      if (b2 > box.bound) break;
      for (std::uint64_t c = 1 + t;; c += threads) {
        const u128 c3 = cube(c);
        if (c3 * c3 > box.bound / b2) break;
        if (!sieve(c) || std::gcd(b, c) != 1) continue;
        std::uint64_t a_lo = c;
        std::uint64_t a_hi = icbrt(box.bound / (b2 * c3));
        if (box.rect) {
          const long double cl = static_cast<long double>(c);
          a_lo = std::max<std::uint64_t>(a_lo, static_cast<std::uint64_t>(std::ceil(box.rect->R1lo * cl)));
          const long double hi = box.rect->R1hi * cl;
          std::uint64_t rh = static_cast<std::uint64_t>(std::floor(hi));
          if (box.rect->r1_hi_open && static_cast<long double>(rh) == hi) --rh;
          a_hi = std::min(a_hi, rh);
        }
        for (std::uint64_t a = a_lo; a <= a_hi; ++a) {
          if (!sieve(a) || std::gcd(a, c) != 1 || std::gcd(a, b) != 1) continue;
          visit(acc, a, b, c);
        }
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  Acc total{};
  for (auto& p : partial) total.merge(std::move(p));
  return total;
}

struct Counter {
  std::uint64_t hits = 0;
  std::uint64_t excluded = 0;
  void merge(Counter&& o) {
    hits += o.hits;
    excluded += o.excluded;
  }
};

struct Collector {
  Enumeration e;
  void merge(Collector&& o) {
    e.fields.insert(e.fields.end(), std::make_move_iterator(o.e.fields.begin()),
                    std::make_move_iterator(o.e.fields.end()));
    e.excluded_8divm += o.e.excluded_8divm;
    e.excluded_reducible += o.e.excluded_reducible;
  }
};

ScanBox box_for(u128 bound, const std::optional<Rect>& rect) {
  ScanBox box;
  box.bound = bound;
  box.rect = rect;
  if (rect) {
    rect->validate();
    box.b_lo = std::max<std::uint64_t>(1, rect->b_min());
    box.b_hi = rect->b_max();
    if (box.b_hi < box.b_lo) box.bound = 0;
  }
  return box;
}

void sort_fields(std::vector<FieldRecord>& v) {
  std::sort(v.begin(), v.end(), [](const FieldRecord& l, const FieldRecord& r) {
    const i128 dl = l.disc < 0 ? -l.disc : l.disc;
    const i128 dr = r.disc < 0 ? -r.disc : r.disc;
    if (dl != dr) return dl < dr;
    return l.m < r.m;
  });
}

Enumeration enumerate_impl(u128 bound, const EnumerationFilter& filter, unsigned threads,
                           const std::optional<std::set<FieldType>>& allowed_types) {
  const std::set<Sign> signs = filter.signs.value_or(std::set<Sign>{Sign::Plus, Sign::Minus});
  auto visit = [&](Collector& col, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    const i128 mag = static_cast<i128>(a) * b * b * c * c * c;
    if (mag > static_cast<i128>(INT64_MAX)) throw QuarticError(ErrorCode::InvalidArgument, "m exceeds 64 bits");
    if (a == 1 && b == 1) return;  // m = +-1 is not a field of degree 4
    for (Sign s : signs) {
      const std::int64_t m = s == Sign::Plus ? static_cast<std::int64_t>(mag) : -static_cast<std::int64_t>(mag);
      if (mod_floor(m, 8) == 0) {
        ++col.e.excluded_8divm;
        continue;
      }
      if (a == 1 && (s == Sign::Plus || b == 2)) {
        ++col.e.excluded_reducible;
        continue;
      }
      if (filter.tau && mod_floor(m, 32) != *filter.tau) continue;
      const FieldType t = type_of_residue(m);
      if (allowed_types && !allowed_types->count(t)) continue;
      FieldRecord r;
      r.m = m;
      r.a = s == Sign::Plus ? static_cast<std::int64_t>(a) : -static_cast<std::int64_t>(a);
      r.b = static_cast<std::int64_t>(b);
      r.c = static_cast<std::int64_t>(c);
      r.sign = s;
      r.type = t;
      const i128 ra = r.a;
      r.disc = -(i128{1} << two_power(t)) * ra * ra * ra * r.b * r.b * r.c * r.c * r.c;
      r.lambda1_sq = Rational(static_cast<long>(c), static_cast<unsigned long>(a));
      r.lambda1_sq.canonicalize();
      col.e.fields.push_back(std::move(r));
    }
  };
  Collector col = scan_carefree<Collector>(box_for(bound, filter.rect), threads, visit);
  sort_fields(col.e.fields);
  return std::move(col.e);
}

double psi_weighted(double x, const std::function<double(std::uint64_t)>& weight) {
  CompensatedSum s;
  for (std::uint64_t n = 1; n <= floor_u64(x); ++n) {
    const double al = alpha(n);
    if (al != 0) s.add(weight(n) * al);
  }
  return s.value();
}

void check_tau(int tau) {
  if (tau < 0 || tau >= 32 || tau % 8 == 0)
    throw QuarticError(ErrorCode::InvalidTau, "tau must be a residue mod 32 not divisible by 8, got " +
                                                  std::to_string(tau));
}

}  // namespace

double area_S(double M, double R) {
  if (M >= R) return 0.5 * M * std::log(R) - 0.5 * (R - 1);
  return 0.5 * M * std::log(M) - 0.5 * (M - 1);
}

double boundary_length_bound(double M, double R) {
  return (std::sqrt(2.0) + std::sqrt(1 + R * R)) * (std::sqrt(M) - 1) + (R - 1);
}

std::uint64_t count_S_exact(double M, double R) {
  std::uint64_t n = 0;
  const long double ML = M;
  for (std::uint64_t c = 1; static_cast<long double>(c) * c < ML; ++c) {
    const long double q = ML / c;
    std::uint64_t a_max = static_cast<std::uint64_t>(std::ceil(q)) - 1;  // a c < M
    a_max = std::min<std::uint64_t>(a_max, static_cast<std::uint64_t>(std::floor(static_cast<long double>(R) * c)));
    if (a_max >= c) n += a_max - c + 1;
  }
  return n;
}

bool lipschitz_check(double M, double R) {
  const double diff = std::abs(static_cast<double>(count_S_exact(M, R)) - area_S(M, R));
  return diff <= 4 * (boundary_length_bound(M, R) + 1);
}

std::uint64_t count_R_exact(double N, double R1, double R2) {
  std::uint64_t n = 0;
  for (std::uint64_t b = 1; b <= floor_u64(R2); ++b)
    n += count_S_exact(N / std::cbrt(static_cast<double>(b * b)), R1);
  return n;
}

double predicted_count_R(double N, double R1, double R2) {
  CompensatedSum s;
  for (std::uint64_t b = 1; b <= floor_u64(R2); ++b) s.add(1.0 / std::cbrt(static_cast<double>(b * b)));
  return 0.5 * N * std::log(R1) * s.value();
}

bool is_l_carefree(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t l) {
  const u128 l2 = static_cast<u128>(l) * l;
  return static_cast<u128>(a) * b % l2 != 0 && static_cast<u128>(b) * c % l2 != 0 &&
         static_cast<u128>(c) * a % l2 != 0;
}

bool is_carefree(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  for (std::uint64_t v : {a * b, b * c, c * a})
    if (!is_squarefree(v)) return false;
  return true;
}

Rational carefree_density(std::uint64_t l) {
  Rational one_minus(static_cast<long>(l - 1), static_cast<unsigned long>(l));
  Rational one_plus(static_cast<long>(l + 3), static_cast<unsigned long>(l));
  Rational d = one_minus * one_minus * one_minus * one_plus;
  d.canonicalize();
  return d;
}

std::uint64_t brute_force_A(std::uint64_t l) {
  const std::uint64_t l2 = l * l;
  std::uint64_t n = 0;
  for (std::uint64_t a = 0; a < l2; ++a)
    for (std::uint64_t b = 0; b < l2; ++b) {
      if (a * b % l2 == 0) continue;
      for (std::uint64_t c = 0; c < l2; ++c)
        if (b * c % l2 != 0 && c * a % l2 != 0) ++n;
    }
  return n;
}

double alpha(std::uint64_t n) {
  if (n == 0) return 0;
  const Factorization f = factor(n);
  double w = 1.0 / std::cbrt(static_cast<double>(n) * static_cast<double>(n));
  for (const auto& [p, e] : f.factors) {
    if (e > 1) return 0;
    w *= static_cast<double>(p - 1) / static_cast<double>(p + 1);
  }
  return w;
}

double psi(double x) {
  return psi_weighted(x, [](std::uint64_t) { return 1.0; });
}

int n_tau(std::uint64_t b, int tau) {
  check_tau(tau);
  return pair_count(b, 32, {tau});
}

int type_modulus(FieldType t) {
  switch (t) {
    case FieldType::I: return 8;
    case FieldType::II: return 4;
    case FieldType::III: return 16;
    case FieldType::IV:
    case FieldType::V: return 32;
  }
  return 32;
}

std::vector<int> type_residues(FieldType t) {
  switch (t) {
    case FieldType::I: return {1};
    case FieldType::II: return {2, 3};
    case FieldType::III: return {4, 5, 13};  // 4 mod 16, or 5 mod 8
    case FieldType::IV: return {12};
    case FieldType::V: return {28};
  }
  return {};
}

std::vector<int> type_residues_mod32(FieldType t) {
  const int mod = type_modulus(t);
  std::vector<int> out;
  for (int r : type_residues(t))
    for (int v = r; v < 32; v += mod) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

Rational M_star(FieldType t, std::uint64_t b) {
  const int mod = type_modulus(t);
  Rational r(pair_count(b, mod, type_residues(t)), static_cast<unsigned long>(mod * mod));
  r.canonicalize();
  return r;
}

double psi_star(FieldType t, double x) {
  return psi_weighted(x, [t](std::uint64_t n) { return M_star(t, n).get_d(); });
}

double psi_tau(int tau, double x) {
  check_tau(tau);
  return psi_weighted(x, [tau](std::uint64_t n) { return static_cast<double>(n_tau(n, tau)); });
}

void Rect::validate() const {
  const bool ok = std::isfinite(R1hi) && std::isfinite(R2hi) && R1lo >= 1 && R2lo >= 1 && R1lo <= R1hi &&
                  R2lo <= R2hi;
  if (!ok) throw QuarticError(ErrorCode::InvalidArgument, "rectangle needs 1 <= lo <= hi in both coordinates");
}

bool Rect::contains_ratio(std::int64_t a, std::int64_t c) const {
  const long double ac = std::abs(static_cast<long double>(a));
  const long double cl = static_cast<long double>(c);
  if (ac < R1lo * cl) return false;
  return r1_hi_open ? ac < R1hi * cl : ac <= R1hi * cl;
}

std::uint64_t Rect::b_min() const { return static_cast<std::uint64_t>(std::ceil(R2lo)); }
std::uint64_t Rect::b_max() const { return floor_u64(R2hi); }

double mu_hat_box(const Rect& r) {
  r.validate();
  return 0.5 * (std::log(r.R1hi) - std::log(r.R1lo)) * (psi(r.R2hi) - psi(std::ceil(r.R2lo) - 1));
}

DensityTable DensityTable::build(std::uint64_t max_b, std::uint64_t max_l) {
  DensityTable t;
  t.max_b = max_b;
  for (FieldType ty : {FieldType::I, FieldType::II, FieldType::III, FieldType::IV, FieldType::V}) {
    auto& v = t.m_star[ty];
    v.resize(max_b + 1);
    for (std::uint64_t b = 1; b <= max_b; ++b) v[b] = M_star(ty, b);
  }
  for (int tau = 1; tau < 32; ++tau) {
    if (tau % 8 == 0) continue;
    auto& v = t.n_tau[tau];
    v.assign(max_b + 1, 0);
    for (std::uint64_t b = 1; b <= max_b; ++b) v[b] = qshape::n_tau(b, tau);
  }
  for (std::uint64_t l : primes_up_to(max_l))
    if (l > 2) t.d_l[l] = carefree_density(l);
  return t;
}

u128 cube_bound(double N) {
  if (!(N >= 0) || !std::isfinite(N)) throw QuarticError(ErrorCode::InvalidArgument, "bound must be finite and >= 0");
  if (N == std::floor(N) && N < 1e12) return cube(static_cast<u128>(N));
  const long double n = N;
  return static_cast<u128>(std::floor(n * n * n));
}

Enumeration enumerate_fields(u128 bound, const EnumerationFilter& filter, unsigned threads) {
  return enumerate_impl(bound, filter, threads, filter.types);
}

Enumeration enumerate_fields(double N, const EnumerationFilter& filter, unsigned threads) {
  return enumerate_fields(cube_bound(N), filter, threads);
}

Enumeration enumerate_by_discriminant(double X, const EnumerationFilter& filter, unsigned threads) {
  if (!(X >= 0) || !std::isfinite(X)) throw QuarticError(ErrorCode::InvalidArgument, "discriminant bound must be >= 0");
  const std::set<FieldType> wanted =
      filter.types.value_or(std::set<FieldType>{FieldType::I, FieldType::II, FieldType::III, FieldType::IV,
                                                FieldType::V});
  Enumeration out;
  for (int k : {2, 4, 8}) {
    std::set<FieldType> group;
    for (FieldType t : wanted)
      if (two_power(t) == k) group.insert(t);
    if (group.empty()) continue;
    const u128 bound = static_cast<u128>(std::floor(static_cast<long double>(X) / (1 << k)));
    Enumeration part = enumerate_impl(bound, filter, threads, group);
    out.fields.insert(out.fields.end(), part.fields.begin(), part.fields.end());
    // Excluded families have no type; report them against the widest bound only.
    if (k == 2) {
      out.excluded_8divm = part.excluded_8divm;
      out.excluded_reducible = part.excluded_reducible;
    }
  }
  if (!wanted.count(FieldType::I) && !wanted.count(FieldType::V)) {
    EnumerationFilter probe = filter;
    probe.types = std::set<FieldType>{};
    const Enumeration e = enumerate_impl(static_cast<u128>(std::floor(static_cast<long double>(X) / 4)), probe,
                                         threads, probe.types);
    out.excluded_8divm = e.excluded_8divm;
    out.excluded_reducible = e.excluded_reducible;
  }
  sort_fields(out.fields);
  return out;
}

double CountReport::relative_deviation() const {
  if (predicted_ratio == 0) return ratio == 0 ? 0 : INFINITY;
  return std::abs(ratio - predicted_ratio) / predicted_ratio;
}

CountReport count_C_tau(double N, double R1, double R2, int tau, unsigned threads) {
  check_tau(tau);
  CountReport rep;
  rep.label = "C^tau";
  rep.N = N;
  rep.rect = Rect{1, R1, 1, R2};
  rep.tau = tau;
  auto visit = [tau](Counter& acc, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    if (residue32(a, b, c) == tau) ++acc.hits;
  };
  const Counter cnt = scan_carefree<Counter>(box_for(cube_bound(N), rep.rect), threads, visit);
  rep.empirical = cnt.hits;
  rep.normalization = N;
  rep.predicted_ratio = std::log(R1) * psi_tau(tau, R2) / (2048 * kZeta2);
  rep.predicted = N * rep.predicted_ratio;
  rep.ratio = N > 0 ? static_cast<double>(rep.empirical) / N : 0;
  return rep;
}

CountReport theorem_ratio_report(FieldType type, Sign sign, double X, const Rect& rect, unsigned threads) {
  rect.validate();
  CountReport rep;
  rep.label = "theorem";
  rep.X = X;
  rep.rect = rect;
  rep.type = type;
  rep.sign = sign;
  const int k = two_power(type);
  const long double scaled = static_cast<long double>(X) / (1 << k);
  rep.N = static_cast<double>(std::cbrt(scaled));
  const std::int64_t sg = sign == Sign::Plus ? 1 : -1;
  auto visit = [&](Counter& acc, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    const std::int64_t m = sg * static_cast<std::int64_t>(a * b * b * c * c * c);
    if (mod_floor(m, 8) == 0) {
      ++acc.excluded;
      return;
    }
    if (a == 1 && (b == 1 || sign == Sign::Plus || b == 2)) return;
    if (type_of_residue(m) == type) ++acc.hits;
  };
  const Counter cnt = scan_carefree<Counter>(box_for(static_cast<u128>(std::floor(scaled)), rect), threads, visit);
  rep.empirical = cnt.hits;
  rep.excluded_8divm = cnt.excluded;
  rep.normalization = rep.N;
  rep.predicted_ratio = (std::log(rect.R1hi) - std::log(rect.R1lo)) *
                        (psi_star(type, rect.R2hi) - psi_star(type, std::ceil(rect.R2lo) - 1)) / (2 * kZeta2);
  rep.predicted = rep.N * rep.predicted_ratio;
  rep.ratio = rep.N > 0 ? static_cast<double>(rep.empirical) / rep.N : 0;
  rep.literal_normalization = std::cbrt(std::pow(2.0, two_power(type)) * X);
  return rep;
}

NonCarefreeReport non_carefree_fraction(double N, std::uint64_t l, double R1, double R2, double K) {
  NonCarefreeReport rep;
  for (std::uint64_t b = 1; b <= floor_u64(R2); ++b) {
    const long double M = N / std::cbrt(static_cast<long double>(b * b));
    for (std::uint64_t c = 1; static_cast<long double>(c) * c < M; ++c) {
      std::uint64_t a_max = static_cast<std::uint64_t>(std::ceil(M / c)) - 1;
      a_max = std::min<std::uint64_t>(a_max, static_cast<std::uint64_t>(std::floor(static_cast<long double>(R1) * c)));
      for (std::uint64_t a = c; a <= a_max; ++a) {
        ++rep.total;
        if (!is_l_carefree(a, b, c, l)) ++rep.failing;
      }
    }
  }
  rep.fraction = rep.total ? static_cast<double>(rep.failing) / static_cast<double>(rep.total) : 0;
  rep.envelope = K * (std::pow(static_cast<double>(l), -4.0 / 3.0) + 1 / std::sqrt(N));
  return rep;
}

}  // namespace qshape
