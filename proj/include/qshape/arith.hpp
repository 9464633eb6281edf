#ifndef QSHAPE_ARITH_HPP
#define QSHAPE_ARITH_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace qshape {

using u128 = unsigned __int128;
using i128 = __int128;

/// Prime factorization of a positive integer, primes strictly increasing.
struct Factorization {
  std::uint64_t n = 1;
  std::vector<std::pair<std::uint64_t, int>> factors;

  std::uint64_t product() const;
  bool operator==(const Factorization&) const = default;
};

/// Complete factorization: trial division to 10^6, then Miller-Rabin and
/// Pollard rho on the cofactor. factor(1) has no factors.
Factorization factor(std::uint64_t n);

bool is_prime(std::uint64_t n);
bool is_squarefree(std::uint64_t n);

/// Largest k with k*k dividing n, and n / k^2 (the squarefree kernel of n up to squares).
std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t n);

/// Least nonnegative residue of v modulo m > 0.
inline std::int64_t mod_floor(std::int64_t v, std::int64_t m) {
  const std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

std::uint64_t isqrt(std::uint64_t n);
/// floor(cbrt(n)) computed exactly.
std::uint64_t icbrt(u128 n);

/// Squarefree flags for 0..limit, built once by sieving squares of primes.
class SquarefreeSieve {
 public:
  explicit SquarefreeSieve(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  bool operator()(std::uint64_t n) const { return n <= limit_ ? flags_[n] : is_squarefree(n); }

 private:
  std::uint64_t limit_;
  std::vector<bool> flags_;
};

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

}  // namespace qshape

#endif  // QSHAPE_ARITH_HPP
