#include "qshape/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qshape {

namespace {

constexpr std::uint64_t kTrialLimit = 1000000;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

// Brent's variant; n is odd composite.
std::uint64_t pollard_rho(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
        k += m;
      } while (k < r && d == 1);
      r <<= 1;
    } while (d == 1);
    if (d == n) {
      do {
        ys = f(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

void factor_large(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_rho(n);
  factor_large(d, out);
  factor_large(n / d, out);
}

}  // namespace

std::uint64_t Factorization::product() const {
  std::uint64_t p = 1;
  for (auto [q, e] : factors)
    for (int i = 0; i < e; ++i) p *= q;
  return p;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factor(std::uint64_t n) {
  Factorization f;
  f.n = n;
  if (n <= 1) return f;
  std::uint64_t rest = n;
  for (std::uint64_t p = 2; p <= kTrialLimit && p * p <= rest; p += (p == 2 ? 1 : 2)) {
    if (rest % p) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  if (rest > 1) {
    std::vector<std::uint64_t> big;
    factor_large(rest, big);
    std::sort(big.begin(), big.end());
    for (std::uint64_t p : big) {
      if (!f.factors.empty() && f.factors.back().first == p)
        ++f.factors.back().second;
      else
        f.factors.emplace_back(p, 1);
    }
  }
  return f;
}

bool is_squarefree(std::uint64_t n) {
  if (n == 0) return false;
  for (auto [p, e] : factor(n).factors)
    if (e > 1) return false;
  return true;
}

std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t n) {
  std::uint64_t k = 1, kernel = 1;
  for (auto [p, e] : factor(n).factors) {
    for (int i = 0; i < e / 2; ++i) k *= p;
    if (e % 2) kernel *= p;
  }
  return {k, kernel};
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t icbrt(u128 n) {
  auto r = static_cast<std::uint64_t>(std::cbrt(static_cast<long double>(n)));
  auto cube = [](std::uint64_t x) { return static_cast<u128>(x) * x * x; };
  while (r > 0 && cube(r) > n) --r;
  while (cube(r + 1) <= n) ++r;
  return r;
}

SquarefreeSieve::SquarefreeSieve(std::uint64_t limit) : limit_(limit), flags_(limit + 1, true) {
  flags_[0] = false;
  for (std::uint64_t p : primes_up_to(isqrt(limit))) {
    const std::uint64_t sq = p * p;
    for (std::uint64_t k = sq; k <= limit; k += sq) flags_[k] = false;
  }
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace qshape
