#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "gaussgcd/errors.hpp"
#include "gaussgcd/gaussian.hpp"
#include "gaussgcd/primes.hpp"

namespace gaussgcd {

/// Per-norm tables for 1 <= n <= xmax. Index 0 is unused padding so tables read as r2[n].
struct SieveTables {
  std::uint64_t xmax = 0;
  /// r(n,2): signed representations of n as a sum of two squares.
  std::vector<std::uint32_t> r2;
  /// M(n): sum of the ideal Moebius function over ideals of norm n.
  std::vector<std::int8_t> moebius_by_norm;
  /// D(n): number of nonzero ideals of norm <= n.
  std::vector<std::uint64_t> ideal_count_prefix;

  /// Ideals of norm exactly n.
  std::uint64_t ideals_of_norm(std::uint64_t n) const { return r2[n] / 4; }

  friend bool operator==(const SieveTables&, const SieveTables&) = default;
};

struct BuildOptions {
  /// Memory guard: 13 bytes per norm, so the default cap is about 1.3 GB.
  std::uint64_t max_xmax = 100'000'000;
  /// Norms re-derived through Gaussian factorization after construction.
  std::size_t validation_samples = 32;
};

namespace detail {

/// Canonical Gaussian integers of norm exactly n, by scanning a from 1 to sqrt(n).
inline std::vector<GaussianInt> canonical_of_norm(std::uint64_t n) {
  std::vector<GaussianInt> out;
  for (std::uint64_t a = 1; a * a <= n; ++a) {
    const std::uint64_t rest = n - a * a;
    const auto b = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(rest)));
    for (std::uint64_t c = (b > 0 ? b - 1 : 0); c <= b + 1; ++c) {
      if (c * c == rest) out.emplace_back(static_cast<std::int64_t>(a), static_cast<std::int64_t>(c));
    }
  }
  return out;
}

inline void cross_validate(const SieveTables& t, std::size_t samples) {
  std::mt19937_64 rng(0x5eedULL ^ t.xmax);
  std::uniform_int_distribution<std::uint64_t> pick(1, t.xmax);
  for (std::size_t i = 0; i < samples; ++i) {
    const std::uint64_t n = i < 8 && i + 1 <= t.xmax ? i + 1 : pick(rng);
    const auto ideals = canonical_of_norm(n);
    int moebius = 0;
    for (const auto& g : ideals) moebius += ideal_moebius(canonical_associate(g));
    if (ideals.size() * 4 != t.r2[n] || moebius != t.moebius_by_norm[n]) {
      throw std::logic_error("sieve table disagrees with factorization at n=" + std::to_string(n));
    }
  }
}

}  // namespace detail

/// Build r2, M and D for norms up to x.
///
/// r2 comes from enumerating canonical lattice points (a >= 1, b >= 0) and counting each four
/// times. M is the coefficient sequence of the product of (1 - q^-s) over the norms q of the
/// prime ideals: (1+i) at norm 2, two conjugate primes at norm p for p = 1 (mod 4), and the
/// inert (p) at norm p^2 for p = 3 (mod 4). Each factor is applied as an in-place sieve pass.
inline SieveTables build_tables(std::uint64_t x, const BuildOptions& opts = {}) {
  if (x == 0) throw DomainError("sieve bound must be positive");
  if (x > opts.max_xmax) {
    throw RangeError("sieve bound " + std::to_string(x) + " exceeds cap " + std::to_string(opts.max_xmax));
  }
  SieveTables t;
  t.xmax = x;
  t.r2.assign(x + 1, 0);
  for (std::uint64_t a = 1; a * a <= x; ++a) {
    for (std::uint64_t b = 0; a * a + b * b <= x; ++b) t.r2[a * a + b * b] += 4;
  }

  std::vector<std::int32_t> m(x + 1, 0);
  m[1] = 1;
  auto apply_prime_ideal = [&m, x](std::uint64_t q) {
    for (std::uint64_t n = (x / q) * q; n >= q; n -= q) m[n] -= m[n / q];
  };
  const auto is_prime = primes::prime_flags(x);
  for (std::uint64_t p = 2; p <= x; ++p) {
    if (!is_prime[p]) continue;
    if (p == 2) {
      apply_prime_ideal(2);
    } else if (p % 4 == 1) {
      apply_prime_ideal(p);
      apply_prime_ideal(p);
    } else if (p <= x / p) {
      apply_prime_ideal(p * p);
    }
  }
  t.moebius_by_norm.assign(x + 1, 0);
  for (std::uint64_t n = 1; n <= x; ++n) {
    if (m[n] < INT8_MIN || m[n] > INT8_MAX) throw OverflowError("Moebius summatory exceeds 8 bits");
    t.moebius_by_norm[n] = static_cast<std::int8_t>(m[n]);
  }

  t.ideal_count_prefix.assign(x + 1, 0);
  for (std::uint64_t n = 1; n <= x; ++n) t.ideal_count_prefix[n] = t.ideal_count_prefix[n - 1] + t.r2[n] / 4;

  detail::cross_validate(t, opts.validation_samples);
  return t;
}

/// D(floor(y)): ideals of norm <= y.
inline std::uint64_t ideal_count(const SieveTables& t, double y) {
  if (!(y >= 0)) throw DomainError("ideal_count needs y >= 0");
  if (y >= static_cast<double>(t.xmax) + 1) throw RangeError("ideal_count beyond table bound");
  return t.ideal_count_prefix[static_cast<std::uint64_t>(std::floor(y))];
}

inline std::uint64_t ideal_count(const SieveTables& t, std::uint64_t y) {
  if (y > t.xmax) throw RangeError("ideal_count beyond table bound");
  return t.ideal_count_prefix[y];
}

/// Sum of r(n,2) for 1 <= n <= x: lattice points in the punctured disk of radius sqrt(x).
inline std::uint64_t circle_sum(const SieveTables& t, std::uint64_t x) {
  if (x > t.xmax) throw RangeError("circle_sum beyond table bound");
  return 4 * t.ideal_count_prefix[x];
}

/// Sum of r(n,2)/n for 1 <= n <= x, Neumaier-compensated.
inline double log_weighted_sum(const SieveTables& t, std::uint64_t x) {
  if (x > t.xmax) throw RangeError("log_weighted_sum beyond table bound");
  double sum = 0.0;
  double carry = 0.0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    if (t.r2[n] == 0) continue;
    const double term = static_cast<double>(t.r2[n]) / static_cast<double>(n);
    const double next = sum + term;
    carry += std::abs(sum) >= std::abs(term) ? (sum - next) + term : (term - next) + sum;
    sum = next;
  }
  return sum + carry;
}

// Cache layout, all little-endian:
//   "GGLAB1" | u16 version | u64 xmax | u32 r2[1..x] | i8 M[1..x] | u64 D[1..x]
inline constexpr std::array<char, 6> kCacheMagic{'G', 'G', 'L', 'A', 'B', '1'};
inline constexpr std::uint16_t kCacheVersion = 1;
inline constexpr std::size_t kCacheHeaderBytes = 16;

namespace detail {

template <typename T>
void put_le(std::vector<unsigned char>& buf, T value) {
  using U = std::make_unsigned_t<T>;
  auto u = static_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf.push_back(static_cast<unsigned char>(u & 0xFFU));
    u = static_cast<U>(u >> 8U);
  }
}

template <typename T>
T get_le(const unsigned char* p) {
  using U = std::make_unsigned_t<T>;
  U u = 0;
  for (std::size_t i = sizeof(T); i-- > 0;) u = static_cast<U>((u << 8U) | p[i]);
  return static_cast<T>(u);
}

}  // namespace detail

inline void save_cache(const SieveTables& t, const std::filesystem::path& path) {
  std::vector<unsigned char> buf;
  buf.reserve(kCacheHeaderBytes + 13 * t.xmax);
  buf.insert(buf.end(), kCacheMagic.begin(), kCacheMagic.end());
  detail::put_le<std::uint16_t>(buf, kCacheVersion);
  detail::put_le<std::uint64_t>(buf, t.xmax);
  for (std::uint64_t n = 1; n <= t.xmax; ++n) detail::put_le<std::uint32_t>(buf, t.r2[n]);
  for (std::uint64_t n = 1; n <= t.xmax; ++n) detail::put_le<std::int8_t>(buf, t.moebius_by_norm[n]);
  for (std::uint64_t n = 1; n <= t.xmax; ++n) detail::put_le<std::uint64_t>(buf, t.ideal_count_prefix[n]);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CacheError(CacheErrc::io, path.string(), "cannot open for writing");
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw CacheError(CacheErrc::io, path.string(), "write failed");
}

inline SieveTables load_cache(const std::filesystem::path& path,
                              std::uint64_t max_xmax = BuildOptions{}.max_xmax) {
  const std::string name = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError(CacheErrc::io, name, "cannot open for reading");
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (buf.size() < kCacheHeaderBytes) throw CacheError(CacheErrc::truncated, name, "short header");
  if (std::memcmp(buf.data(), kCacheMagic.data(), kCacheMagic.size()) != 0) {
    throw CacheError(CacheErrc::bad_magic, name, "not a sieve cache");
  }
  const auto version = detail::get_le<std::uint16_t>(buf.data() + 6);
  if (version != kCacheVersion) {
    throw CacheError(CacheErrc::version_mismatch, name, "version " + std::to_string(version));
  }
  const auto x = detail::get_le<std::uint64_t>(buf.data() + 8);
  if (x == 0 || x > max_xmax) throw CacheError(CacheErrc::corrupt, name, "xmax out of range");
  const std::uint64_t expected = kCacheHeaderBytes + 13 * x;
  if (buf.size() < expected) throw CacheError(CacheErrc::truncated, name, "payload shorter than xmax implies");
  if (buf.size() > expected) throw CacheError(CacheErrc::corrupt, name, "trailing bytes");

  SieveTables t;
  t.xmax = x;
  t.r2.assign(x + 1, 0);
  t.moebius_by_norm.assign(x + 1, 0);
  t.ideal_count_prefix.assign(x + 1, 0);
  const unsigned char* p = buf.data() + kCacheHeaderBytes;
  for (std::uint64_t n = 1; n <= x; ++n, p += 4) t.r2[n] = detail::get_le<std::uint32_t>(p);
  for (std::uint64_t n = 1; n <= x; ++n, p += 1) t.moebius_by_norm[n] = detail::get_le<std::int8_t>(p);
  for (std::uint64_t n = 1; n <= x; ++n, p += 8) t.ideal_count_prefix[n] = detail::get_le<std::uint64_t>(p);

  for (std::uint64_t n = 1; n <= x; ++n) {
    if (t.r2[n] % 4 != 0 || t.ideal_count_prefix[n] != t.ideal_count_prefix[n - 1] + t.r2[n] / 4) {
      throw CacheError(CacheErrc::corrupt, name, "inconsistent tables at n=" + std::to_string(n));
    }
  }
  return t;
}

}  // namespace gaussgcd
