#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gaussgcd/errors.hpp"

namespace gaussgcd {

struct FitResult {
  int degree = 0;
  /// Highest degree first.
  std::vector<double> coefficients;
  /// Root-mean-square residual over the fitted samples.
  double residual = 0.0;

  double leading() const { return coefficients.front(); }

  double operator()(double x) const {
    double acc = 0.0;
    for (double c : coefficients) acc = acc * x + c;
    return acc;
  }
};

/// Ordinary least squares on the monomial basis.
///
/// Abscissae are divided by max|x| and each Vandermonde column is normalized to unit length
/// before a column-pivoted QR solve; coefficients are mapped back to the original basis.
inline FitResult fit_polynomial(std::span<const double> xs, std::span<const double> ys, int degree) {
  if (degree < 0) throw DomainError("polynomial degree must be nonnegative");
  if (xs.size() != ys.size()) throw DomainError("fit needs equally many x and y values");
  const auto cols = static_cast<Eigen::Index>(degree + 1);
  const auto rows = static_cast<Eigen::Index>(xs.size());
  if (rows < cols) throw DomainError("underdetermined fit: need at least degree + 1 samples");

  double scale = 0.0;
  for (double x : xs) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) scale = 1.0;

  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double t = xs[static_cast<std::size_t>(i)] / scale;
    double p = 1.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      a(i, j) = p;
      p *= t;
    }
    b(i) = ys[static_cast<std::size_t>(i)];
  }
  Eigen::VectorXd col_norm = a.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (col_norm(j) == 0.0) throw DomainError("rank-deficient fit: zero column");
    a.col(j) /= col_norm(j);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-12);
  if (qr.rank() < cols) throw DomainError("rank-deficient fit: abscissae too few or repeated");
  const Eigen::VectorXd z = qr.solve(b);

  FitResult out;
  out.degree = degree;
  out.coefficients.resize(static_cast<std::size_t>(cols));
  for (Eigen::Index j = 0; j < cols; ++j) {
    out.coefficients[static_cast<std::size_t>(degree - j)] =
        z(j) / col_norm(j) / std::pow(scale, static_cast<double>(j));
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = out(xs[i]) - ys[i];
    sq += r * r;
  }
  out.residual = std::sqrt(sq / static_cast<double>(xs.size()));
  return out;
}

}  // namespace gaussgcd
