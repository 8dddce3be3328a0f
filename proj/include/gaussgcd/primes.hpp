#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "gaussgcd/errors.hpp"
#include "gaussgcd/int128.hpp"

// Rational-integer helpers used by Gaussian factorization: 64-bit primality,
// Pollard-Brent factorization, and square roots of -1 modulo split primes.

namespace gaussgcd::primes {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
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

namespace detail {

inline std::uint64_t pollard_brent(std::uint64_t n, std::mt19937_64& rng) {
  if (n % 2 == 0) return 2;
  std::uniform_int_distribution<std::uint64_t> dist(1, n - 1);
  for (;;) {
    const std::uint64_t c = dist(rng);
    std::uint64_t y = dist(rng);
    std::uint64_t m = 128;
    std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
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
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1U;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out, std::mt19937_64& rng) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n, rng);
  factor_into(d, out, rng);
  factor_into(n / d, out, rng);
}

}  // namespace detail

/// Prime factorization of n >= 1 as ascending (prime, exponent) pairs.
inline std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) {
  if (n == 0) throw DomainError("cannot factor zero");
  std::vector<std::uint64_t> raw;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      raw.push_back(p);
      n /= p;
    }
  }
  if (n > 1) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    detail::factor_into(n, raw, rng);
  }
  std::sort(raw.begin(), raw.end());
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p : raw) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1U);
    }
  }
  return out;
}

/// Some t with t^2 = -1 (mod p) for a prime p = 1 (mod 4). Seeded so results are reproducible.
inline std::uint64_t sqrt_minus_one(std::uint64_t p) {
  if (p % 4 != 1) throw DomainError("-1 is a square only modulo primes p = 1 (mod 4)");
  std::mt19937_64 rng(p * 0x2545f4914f6cdd1dULL + 1);
  std::uniform_int_distribution<std::uint64_t> dist(2, p - 1);
  for (;;) {
    const std::uint64_t t = pow_mod(dist(rng), (p - 1) / 4, p);
    if (mul_mod(t, t, p) == p - 1) return t;
  }
}

/// Sieve of Eratosthenes; flags[n] != 0 iff n is prime, for n <= limit.
inline std::vector<std::uint8_t> prime_flags(std::uint64_t limit) {
  std::vector<std::uint8_t> flags(limit + 1, 1);
  flags[0] = 0;
  if (limit >= 1) flags[1] = 0;
  for (std::uint64_t p = 2; p * p <= limit; ++p) {
    if (!flags[p]) continue;
    for (std::uint64_t q = p * p; q <= limit; q += p) flags[q] = 0;
  }
  return flags;
}

}  // namespace gaussgcd::primes
