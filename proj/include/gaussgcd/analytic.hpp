#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "gaussgcd/errors.hpp"

namespace gaussgcd {

/// A truncated series value together with a bound on |value - true sum|.
struct ZetaConstants {
  double s = 0.0;
  double value = 0.0;
  double tail_bound = 0.0;
};

namespace detail {

// B_2, B_4, ..., B_20
inline constexpr std::array<double, 10> kBernoulliEven{
    1.0 / 6.0,       -1.0 / 30.0,       1.0 / 42.0,     -1.0 / 30.0,      5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,         -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0};

inline double rounding_floor(double value, int terms) {
  return 4.0 * terms * std::numeric_limits<double>::epsilon() * std::abs(value);
}

/// Cohen-Villegas-Zagier acceleration of sum_{k>=0} (-1)^k a(k). Error is at most
/// 2|a(0)|/(3+sqrt 8)^n for totally monotone a; returns that bound in `bound`.
template <typename Term>
double alternating_sum(Term a, int n, double& bound) {
  const double base = 3.0 + std::sqrt(8.0);
  double d = std::pow(base, n);
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0;
  double c = -d;
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    s += c * a(k);
    b = (static_cast<double>(k + n) * static_cast<double>(k - n) * b) /
        ((static_cast<double>(k) + 0.5) * static_cast<double>(k + 1));
  }
  bound = 2.0 * std::abs(a(0)) / std::pow(base, n);
  return s / d;
}

}  // namespace detail

/// Riemann zeta for real s >= 1.5: partial sum to N-1, then Euler-Maclaurin tail with
/// Bernoulli corrections through B_18. The first omitted correction bounds the remainder.
inline ZetaConstants riemann_zeta(double s) {
  if (!(s >= 1.5)) throw DomainError("riemann_zeta requires s >= 1.5");
  constexpr int kN = 12;
  constexpr int kCorrections = 9;
  double sum = 0.0;
  for (int n = kN - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
  const double big_n = kN;
  sum += std::pow(big_n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(big_n, -s);

  // term_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
  double rising = s;  // s(s+1)...(s+2j-2)
  double factorial = 2.0;
  double omitted = 0.0;
  for (int j = 1; j <= kCorrections + 1; ++j) {
    const double term = detail::kBernoulliEven[j - 1] / factorial * rising *
                        std::pow(big_n, -s - 2.0 * j + 1.0);
    if (j <= kCorrections) {
      sum += term;
    } else {
      omitted = std::abs(term);
    }
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return {s, sum, omitted + detail::rounding_floor(sum, kN + kCorrections)};
}

/// Dirichlet beta sum_{k>=0} (-1)^k (2k+1)^{-s} for s >= 1; beta(1) = pi/4.
inline ZetaConstants dirichlet_beta(double s) {
  if (!(s >= 1.0)) throw DomainError("dirichlet_beta requires s >= 1");
  constexpr int kTerms = 40;
  double bound = 0.0;
  const double value = detail::alternating_sum(
      [s](int k) { return std::pow(2.0 * k + 1.0, -s); }, kTerms, bound);
  return {s, value, bound + detail::rounding_floor(value, kTerms)};
}

/// beta'(1) = sum_{k>=0} (-1)^{k+1} ln(2k+1)/(2k+1), differentiated term by term.
inline ZetaConstants dirichlet_beta_derivative_at_one() {
  constexpr int kTerms = 40;
  double bound = 0.0;
  const double value = -detail::alternating_sum(
      [](int k) {
        const double m = 2.0 * k + 1.0;
        return std::log(m) / m;
      },
      kTerms, bound);
  // ln(m)/m is not totally monotone near m = e; widen the accelerator bound accordingly.
  return {1.0, value, 1e3 * bound + detail::rounding_floor(value, kTerms) + 1e-14};
}

/// Euler-Mascheroni constant from H_N - ln N - 1/(2N) + sum_k B_2k / (2k N^2k).
inline ZetaConstants euler_gamma() {
  constexpr int kN = 20;
  double harmonic = 0.0;
  for (int n = kN; n >= 1; --n) harmonic += 1.0 / n;
  const double big_n = kN;
  double value = harmonic - std::log(big_n) - 0.5 / big_n;
  constexpr int kCorrections = 5;
  for (int k = 1; k <= kCorrections; ++k) {
    value += detail::kBernoulliEven[k - 1] / (2.0 * k * std::pow(big_n, 2.0 * k));
  }
  const double omitted = std::abs(detail::kBernoulliEven[kCorrections] /
                                  (2.0 * (kCorrections + 1) * std::pow(big_n, 2.0 * (kCorrections + 1))));
  return {1.0, value, omitted + detail::rounding_floor(value, kN + kCorrections)};
}

/// Dedekind zeta of Q(i), evaluated as zeta(s) * beta(s).
inline ZetaConstants dedekind_zeta_qi(double s) {
  const ZetaConstants z = riemann_zeta(s);
  const ZetaConstants b = dirichlet_beta(s);
  const double value = z.value * b.value;
  const double bound = z.tail_bound * (b.value + b.tail_bound) + b.tail_bound * z.value;
  return {s, value, bound + detail::rounding_floor(value, 1)};
}

/// Dedekind zeta of Q(i) straight from its lattice definition: (1/4) sum over (a,b) != 0 with
/// a^2 + b^2 <= radius_sq of (a^2+b^2)^{-s}. The tail beyond the disk is bounded by
/// pi R^{1-s} / (4(s-1)) inflated by the circle-problem slack.
inline ZetaConstants dedekind_zeta_qi_lattice(double s, std::uint64_t radius_sq = 1'000'000) {
  if (!(s > 1.0)) throw DomainError("lattice sum diverges for s <= 1");
  // One quadrant (a >= 1, b >= 0) is exactly a quarter of the punctured lattice.
  double sum = 0.0;
  double carry = 0.0;
  for (std::uint64_t a = 1; a * a <= radius_sq; ++a) {
    for (std::uint64_t b = 0; a * a + b * b <= radius_sq; ++b) {
      const double term = std::pow(static_cast<double>(a * a + b * b), -s);
      const double y = term - carry;
      const double t = sum + y;
      carry = (t - sum) - y;
      sum = t;
    }
  }
  const double r = static_cast<double>(radius_sq);
  const double tail = std::numbers::pi * std::pow(r, 1.0 - s) / (4.0 * (s - 1.0));
  return {s, sum, 2.0 * tail + std::pow(r, 1.0 / 3.0 - s)};
}

namespace detail {

struct ConstantCache {
  double zeta_qi_2;
  double sierpinski;
};

inline const ConstantCache& constants() {
  static const ConstantCache cache = [] {
    const double gamma = euler_gamma().value;
    const double beta_prime = dirichlet_beta_derivative_at_one().value;
    return ConstantCache{dedekind_zeta_qi(2.0).value, gamma + beta_prime / dirichlet_beta(1.0).value};
  }();
  return cache;
}

}  // namespace detail

/// Sierpinski's constant S = gamma + beta'(1)/beta(1), the offset in sum r(n,2)/n ~ pi (S + log x).
inline double sierpinski_constant() { return detail::constants().sierpinski; }

/// Limiting probability that the gcd of two random ideals is one fixed ideal of norm k.
inline double theorem1_main(std::uint64_t k) {
  if (k == 0) throw DomainError("ideal norm must be positive");
  const double kd = static_cast<double>(k);
  return 1.0 / (detail::constants().zeta_qi_2 * kd * kd);
}

/// pi / (4 zeta_Q(i)(2)): growth rate of the expected gcd norm in log x.
inline double expected_norm_slope() { return std::numbers::pi / (4.0 * detail::constants().zeta_qi_2); }

inline double theorem2_main(double x) {
  if (!(x > 1.0)) throw DomainError("theorem2_main requires x > 1");
  return expected_norm_slope() * std::log(x);
}

/// Conjectured leading constant of the n-th gcd-norm moment:
/// 4/(pi(n+1)) * (2 zeta_K(n)/zeta_K(n+1) - 1), multiplying x^{n-1}.
inline double conjectured_moment_constant(int n) {
  if (n < 2) throw DomainError("conjectured moment constant needs n >= 2");
  const double ratio = dedekind_zeta_qi(n).value / dedekind_zeta_qi(n + 1).value;
  return 4.0 / (std::numbers::pi * (n + 1)) * (2.0 * ratio - 1.0);
}

}  // namespace gaussgcd
