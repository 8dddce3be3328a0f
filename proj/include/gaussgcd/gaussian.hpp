#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gaussgcd/errors.hpp"
#include "gaussgcd/int128.hpp"
#include "gaussgcd/primes.hpp"

namespace gaussgcd {

/// Components of inputs to gcd / division / factorization must stay strictly below this in magnitude.
inline constexpr std::int64_t kComponentLimit = std::int64_t{1} << 31;

/// a + bi with exact 64-bit components. Products are formed in 128 bits and narrowed with a check.
struct GaussianInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr GaussianInt() = default;
  constexpr GaussianInt(std::int64_t real) : re(real) {}  // NOLINT(google-explicit-constructor)
  constexpr GaussianInt(std::int64_t real, std::int64_t imag) : re(real), im(imag) {}

  constexpr bool is_zero() const { return re == 0 && im == 0; }
  constexpr GaussianInt conj() const { return {re, -im}; }
  constexpr GaussianInt operator-() const { return {-re, -im}; }

  friend constexpr bool operator==(const GaussianInt&, const GaussianInt&) = default;
  friend constexpr auto operator<=>(const GaussianInt&, const GaussianInt&) = default;

  friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
    return {narrow_i64(i128{a.re} + b.re), narrow_i64(i128{a.im} + b.im)};
  }
  friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
    return {narrow_i64(i128{a.re} - b.re), narrow_i64(i128{a.im} - b.im)};
  }
  friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
    return {narrow_i64(i128{a.re} * b.re - i128{a.im} * b.im),
            narrow_i64(i128{a.re} * b.im + i128{a.im} * b.re)};
  }
};

inline constexpr std::array<GaussianInt, 4> kUnits{GaussianInt{1, 0}, GaussianInt{0, 1},
                                                   GaussianInt{-1, 0}, GaussianInt{0, -1}};

inline std::string to_string(const GaussianInt& z) {
  if (z.im == 0) return std::to_string(z.re);
  std::string imag = (z.im == 1 || z.im == -1) ? "i" : std::to_string(z.im < 0 ? -z.im : z.im) + "i";
  if (z.re == 0) return (z.im < 0 ? "-" : "") + imag;
  return std::to_string(z.re) + (z.im < 0 ? "-" : "+") + imag;
}

inline std::ostream& operator<<(std::ostream& os, const GaussianInt& z) { return os << to_string(z); }

inline void require_bounded(const GaussianInt& z) {
  if (z.re >= kComponentLimit || z.re <= -kComponentLimit || z.im >= kComponentLimit ||
      z.im <= -kComponentLimit) {
    throw OverflowError("Gaussian integer component exceeds 2^31 bound: " + to_string(z));
  }
}

/// re^2 + im^2.
inline std::uint64_t norm(const GaussianInt& z) {
  const u128 n = static_cast<u128>(i128{z.re} * z.re) + static_cast<u128>(i128{z.im} * z.im);
  if (n > UINT64_MAX) throw OverflowError("norm exceeds 64 bits: " + to_string(z));
  return static_cast<std::uint64_t>(n);
}

/// Representative of a nonzero ideal of Z[i]: the associate with re >= 1, im >= 0.
struct CanonicalIdeal {
  GaussianInt gen;
  std::uint64_t norm = 0;

  friend bool operator==(const CanonicalIdeal&, const CanonicalIdeal&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const CanonicalIdeal& k) {
  return os << '(' << k.gen << ')';
}

inline CanonicalIdeal canonical_associate(const GaussianInt& z) {
  if (z.is_zero()) throw DomainError("zero has no canonical associate");
  GaussianInt w = z;
  // Multiplying by i rotates a quarter turn; exactly one rotation lands in re >= 1, im >= 0.
  while (!(w.re >= 1 && w.im >= 0)) w = GaussianInt{-w.im, w.re};
  return {w, norm(w)};
}

struct DivRem {
  GaussianInt quotient;
  GaussianInt remainder;
};

/// a = q*b + r with each component of q the rational part of a/b rounded half-up, so norm(r) <= norm(b)/2.
inline DivRem div_rem_rounded(const GaussianInt& a, const GaussianInt& b) {
  if (b.is_zero()) throw DivisionByZero();
  require_bounded(a);
  require_bounded(b);
  const i128 den = i128{b.re} * b.re + i128{b.im} * b.im;
  const i128 num_re = i128{a.re} * b.re + i128{a.im} * b.im;
  const i128 num_im = i128{a.im} * b.re - i128{a.re} * b.im;
  // floor(t/den + 1/2) == floor((2t + den) / (2 den))
  const GaussianInt q{narrow_i64(floor_div(2 * num_re + den, 2 * den)),
                      narrow_i64(floor_div(2 * num_im + den, 2 * den))};
  return {q, a - q * b};
}

inline bool divides(const GaussianInt& d, const GaussianInt& z) {
  return div_rem_rounded(z, d).remainder.is_zero();
}

inline GaussianInt exact_div(const GaussianInt& z, const GaussianInt& d) {
  auto [q, r] = div_rem_rounded(z, d);
  if (!r.is_zero()) throw DomainError(to_string(d) + " does not divide " + to_string(z));
  return q;
}

inline CanonicalIdeal euclid_gcd(GaussianInt a, GaussianInt b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd(0, 0) is the zero ideal");
  require_bounded(a);
  require_bounded(b);
  while (!b.is_zero()) {
    GaussianInt r = div_rem_rounded(a, b).remainder;
    a = b;
    b = r;
  }
  return canonical_associate(a);
}

struct GaussianFactorization {
  GaussianInt unit{1, 0};
  /// Distinct canonical primes, ascending by (norm, re).
  std::vector<std::pair<CanonicalIdeal, unsigned>> factors;

  GaussianInt product() const {
    GaussianInt acc = unit;
    for (const auto& [prime, exp] : factors) {
      for (unsigned i = 0; i < exp; ++i) acc = acc * prime.gen;
    }
    return acc;
  }
};

namespace detail {

/// a^2 + b^2 = p for a prime p = 1 (mod 4), by Euclid on (p, t) with t^2 = -1 (mod p) stopped
/// at the first remainder below sqrt(p). Integer-only, so it works for p beyond the component bound.
inline GaussianInt two_squares(std::uint64_t p) {
  std::uint64_t a = p;
  std::uint64_t b = primes::sqrt_minus_one(p);
  while (static_cast<u128>(b) * b > p) {
    const std::uint64_t r = a % b;
    a = b;
    b = r;
  }
  const std::uint64_t rest = p - b * b;
  auto c = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(rest)));
  while (static_cast<u128>(c) * c > rest) --c;
  while (static_cast<u128>(c + 1) * (c + 1) <= rest) ++c;
  if (c * c != rest) throw DomainError("no two-square decomposition for " + std::to_string(p));
  return {static_cast<std::int64_t>(b), static_cast<std::int64_t>(c)};
}

}  // namespace detail

/// Factor z into a unit times canonical Gaussian prime powers.
///
/// norm(z) is factored over Z. The prime 2 contributes the ramified prime (1+i); p = 3 (mod 4)
/// stays inert and appears with half the rational exponent; p = 1 (mod 4) splits as a+bi and its
/// conjugate with a^2 + b^2 = p, and the split between the two is found by trial division of z.
inline GaussianFactorization factor_gaussian(const GaussianInt& z) {
  if (z.is_zero()) throw DomainError("zero has no factorization");
  require_bounded(z);

  GaussianFactorization out;
  GaussianInt rest = z;
  auto strip = [&rest](const CanonicalIdeal& prime, unsigned times) {
    for (unsigned i = 0; i < times; ++i) rest = exact_div(rest, prime.gen);
  };

  for (const auto& [p, e] : primes::factor(norm(z))) {
    const auto prime_p = static_cast<std::int64_t>(p);
    if (p == 2) {
      const CanonicalIdeal ramified = canonical_associate({1, 1});
      strip(ramified, e);
      out.factors.emplace_back(ramified, e);
    } else if (p % 4 == 3) {
      if (e % 2 != 0) throw DomainError("inert prime with odd exponent in norm");
      const CanonicalIdeal inert = canonical_associate({prime_p, 0});
      strip(inert, e / 2);
      out.factors.emplace_back(inert, e / 2);
    } else {
      const CanonicalIdeal first = canonical_associate(detail::two_squares(p));
      const CanonicalIdeal second = canonical_associate(first.gen.conj());
      unsigned first_exp = 0;
      while (first_exp < e && divides(first.gen, rest)) {
        rest = exact_div(rest, first.gen);
        ++first_exp;
      }
      strip(second, e - first_exp);
      if (first_exp > 0) out.factors.emplace_back(first, first_exp);
      if (e - first_exp > 0) out.factors.emplace_back(second, e - first_exp);
    }
  }
  if (norm(rest) != 1) throw DomainError("factorization left a non-unit cofactor");
  out.unit = rest;
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& l, const auto& r) {
    return std::pair{l.first.norm, l.first.gen.re} < std::pair{r.first.norm, r.first.gen.re};
  });
  return out;
}

/// Ideal Moebius function: 1 on (1), (-1)^t on products of t distinct primes, 0 otherwise.
inline int ideal_moebius(const CanonicalIdeal& k) {
  if (k.norm == 1) return 1;
  const auto f = factor_gaussian(k.gen);
  int sign = 1;
  for (const auto& [prime, exp] : f.factors) {
    if (exp > 1) return 0;
    sign = -sign;
  }
  return sign;
}

}  // namespace gaussgcd
