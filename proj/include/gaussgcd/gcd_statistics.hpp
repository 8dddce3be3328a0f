#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "gaussgcd/errors.hpp"
#include "gaussgcd/fit.hpp"
#include "gaussgcd/gaussian.hpp"
#include "gaussgcd/int128.hpp"
#include "gaussgcd/sieve_tables.hpp"

namespace gaussgcd {

/// Largest cutoff accepted by the pairwise Euclidean oracle.
inline constexpr std::uint64_t kOracleMaxX = 2000;

/// Exact histogram of N(gcd) over all ordered pairs of nonzero ideals with norm <= x.
struct GcdDistribution {
  std::uint64_t x = 0;
  /// counts[k] = E(k) for 0 <= k <= x; counts[0] is always 0.
  std::vector<std::uint64_t> counts;
  /// D(x)^2.
  std::uint64_t total = 0;

  std::uint64_t count(std::uint64_t k) const { return k < counts.size() ? counts[k] : 0; }

  friend bool operator==(const GcdDistribution&, const GcdDistribution&) = default;
};

/// Every canonical Gaussian integer of norm <= x, i.e. one generator per nonzero ideal.
inline std::vector<GaussianInt> canonical_ideals_up_to(std::uint64_t x) {
  std::vector<GaussianInt> out;
  for (std::int64_t a = 1; static_cast<std::uint64_t>(a * a) <= x; ++a) {
    for (std::int64_t b = 0; static_cast<std::uint64_t>(a * a + b * b) <= x; ++b) out.emplace_back(a, b);
  }
  return out;
}

/// Pairwise Euclidean gcd over all ordered ideal pairs. Quadratic; kept as the reference oracle.
inline GcdDistribution distribution_bruteforce(std::uint64_t x) {
  if (x == 0) throw DomainError("cutoff must be positive");
  if (x > kOracleMaxX) {
    throw RangeError("brute-force oracle limited to x <= " + std::to_string(kOracleMaxX) +
                     "; use the fast path");
  }
  const auto ideals = canonical_ideals_up_to(x);
  GcdDistribution d{x, std::vector<std::uint64_t>(x + 1, 0), 0};
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    ++d.counts[norm(ideals[i])];
    for (std::size_t j = i + 1; j < ideals.size(); ++j) d.counts[euclid_gcd(ideals[i], ideals[j]).norm] += 2;
  }
  d.total = static_cast<std::uint64_t>(ideals.size()) * ideals.size();
  return d;
}

/// Ordered coprime ideal pairs with both norms <= y: sum_{m <= y} M(m) D(y/m)^2.
inline i128 coprime_pair_count(const SieveTables& t, std::uint64_t y) {
  // |M| <= 32 and D(y) < 2^27 for y <= 10^8, so the running sum stays far inside 128 bits.
  i128 acc = 0;
  const auto& m = t.moebius_by_norm;
  const auto& dcount = t.ideal_count_prefix;
  for (std::uint64_t j = 1; j <= y; ++j) {
    if (m[j] == 0) continue;
    const i128 dv = dcount[y / j];
    acc += m[j] * dv * dv;
  }
  return acc;
}

/// E(k) = (r(k,2)/4) * coprime_pair_count(floor(x/k)).
///
/// Pairs with gcd K correspond to coprime pairs under the cutoff x/N(K), and Moebius inversion
/// counts those from D alone. coprime_pair_count is evaluated once per distinct floor(x/k);
/// workers split that list by stride and write disjoint slots, so the result is bit-identical
/// for every thread count.
inline GcdDistribution distribution_fast(std::uint64_t x, const SieveTables& t, unsigned threads = 1) {
  if (x == 0) throw DomainError("cutoff must be positive");
  if (x > t.xmax) {
    throw RangeError("sieve tables cover x <= " + std::to_string(t.xmax) + ", requested " + std::to_string(x));
  }
  std::vector<std::uint64_t> quotients;  // distinct floor(x/k), descending
  for (std::uint64_t k = 1; k <= x; k = x / (x / k) + 1) quotients.push_back(x / k);

  std::vector<i128> coprime(quotients.size(), 0);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < quotients.size(); i += stride) coprime[i] = coprime_pair_count(t, quotients[i]);
  };
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(quotients.size())));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
  }

  GcdDistribution d{x, std::vector<std::uint64_t>(x + 1, 0), 0};
  const u128 total = static_cast<u128>(t.ideal_count_prefix[x]) * t.ideal_count_prefix[x];
  if (total > UINT64_MAX) throw OverflowError("pair total exceeds 64 bits");
  d.total = static_cast<std::uint64_t>(total);

  std::size_t qi = 0;
  for (std::uint64_t k = 1; k <= x; ++k) {
    while (quotients[qi] != x / k) ++qi;
    const std::uint64_t ideals = t.ideals_of_norm(k);
    if (ideals == 0) continue;
    const i128 e = checked_mul(static_cast<i128>(ideals), coprime[qi]);
    if (e < 0 || e > static_cast<i128>(total)) throw OverflowError("inconsistent gcd count at k=" + std::to_string(k));
    d.counts[k] = static_cast<std::uint64_t>(e);
  }
  return d;
}

/// sum_k k^n E(k), exact. Throws OverflowError outside the 128-bit envelope (certified for n <= 5, x <= 10^6).
inline i128 moment_numerator(const GcdDistribution& d, unsigned n) {
  i128 acc = 0;
  for (std::uint64_t k = 1; k < d.counts.size(); ++k) {
    if (d.counts[k] == 0) continue;
    acc = checked_add(acc, checked_mul(checked_pow(static_cast<i128>(k), n), static_cast<i128>(d.counts[k])));
  }
  return acc;
}

inline double moment(const GcdDistribution& d, unsigned n) {
  if (d.total == 0) throw DomainError("empty distribution");
  if (n == 0) return 1.0;
  return static_cast<double>(static_cast<long double>(moment_numerator(d, n)) /
                             static_cast<long double>(d.total));
}

inline double coprime_probability(const GcdDistribution& d) {
  if (d.total == 0) throw DomainError("empty distribution");
  return static_cast<double>(static_cast<long double>(d.count(1)) / static_cast<long double>(d.total));
}

inline double expected_norm(const GcdDistribution& d) { return moment(d, 1); }

/// Evenly spaced integer cutoffs from lo to hi inclusive (lo drops to 1 when hi < lo).
struct GridSpec {
  std::uint64_t lo = 100;
  std::uint64_t hi = 50'000;
  std::size_t points = 500;

  std::vector<std::uint64_t> values() const {
    if (hi == 0) throw DomainError("grid upper bound must be positive");
    if (points == 0) throw DomainError("grid needs at least one point");
    const std::uint64_t start = std::max<std::uint64_t>(1, lo <= hi ? lo : 1);
    std::vector<std::uint64_t> out;
    if (points == 1 || start == hi) return {hi};
    const double step = static_cast<double>(hi - start) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
      const auto v = static_cast<std::uint64_t>(std::llround(static_cast<double>(start) + step * static_cast<double>(i)));
      if (out.empty() || v > out.back()) out.push_back(v);
    }
    out.back() = hi;
    return out;
  }
};

struct MomentSample {
  double x = 0.0;
  double value = 0.0;
};

/// Empirical n-th moment curve, x strictly increasing.
struct MomentSeries {
  int n = 1;
  std::vector<MomentSample> samples;

  std::vector<double> xs() const {
    std::vector<double> v;
    v.reserve(samples.size());
    for (const auto& s : samples) v.push_back(s.x);
    return v;
  }
  std::vector<double> values() const {
    std::vector<double> v;
    v.reserve(samples.size());
    for (const auto& s : samples) v.push_back(s.value);
    return v;
  }
};

/// One distribution per grid cutoff, shared by every requested order.
inline std::vector<MomentSeries> moment_series(std::span<const int> orders, std::span<const std::uint64_t> grid,
                                               const SieveTables& t, unsigned threads = 1) {
  std::vector<MomentSeries> out;
  for (int n : orders) {
    if (n < 1) throw DomainError("moment order must be >= 1");
    out.push_back({n, {}});
  }
  for (std::uint64_t x : grid) {
    const GcdDistribution d = distribution_fast(x, t, threads);
    for (auto& series : out) {
      series.samples.push_back({static_cast<double>(x), moment(d, static_cast<unsigned>(series.n))});
    }
  }
  return out;
}

inline FitResult fit_polynomial(const MomentSeries& series, int degree) {
  const auto xs = series.xs();
  const auto ys = series.values();
  return fit_polynomial(xs, ys, degree);
}

/// Moment curve of order n over the grid, fitted by a full polynomial of degree n-1.
inline FitResult leading_coefficient_experiment(int n, std::uint64_t xmax, const GridSpec& grid,
                                                const SieveTables& t, unsigned threads = 1) {
  if (n < 2 || n > 5) throw DomainError("leading-coefficient experiment covers moments 2..5");
  if (t.xmax < xmax) throw RangeError("sieve tables smaller than experiment xmax");
  GridSpec g = grid;
  g.hi = xmax;
  const auto xs = g.values();
  const int orders[] = {n};
  const auto series = moment_series(orders, xs, t, threads);
  return fit_polynomial(series.front(), n - 1);
}

}  // namespace gaussgcd
