// Copyright 2026 The gaussmet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Least-squares fit of I = sum_n a_n C^n over one (probe, tau) curve.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "gaussmet/errors.hpp"
#include "gaussmet/sweep.hpp"

namespace gaussmet {

/// Closed parameter interval [lo, hi] (1e-12 slack at both ends).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo - 1e-12 && x <= hi + 1e-12; }
};

/// Sub-interval on which coherence is monotone in the channel parameter.
inline Interval default_branch(ChannelKind kind) {
  return kind == ChannelKind::kAttenuator ? Interval{0.0, std::numbers::pi / 2} : Interval{0.0, kAmplifierMaxR};
}

struct FitResult {
  int degree = 0;
  std::vector<double> coefficients;  // a_0 .. a_degree
  double rmse = 0.0;
  double r_squared = 0.0;
  Interval branch;
  std::size_t n_points = 0;

  double evaluate(double c) const {
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * c + *it;
    return acc;
  }
};

/// Ordinary least squares for y = sum_n a_n x^n by column-pivoting
/// Householder QR of the Vandermonde matrix.
inline FitResult fit_polynomial(std::span<const double> x, std::span<const double> y, int degree) {
  if (degree < 0) throw InvalidArgument("fit: degree must be >= 0");
  if (x.size() != y.size()) throw InvalidArgument("fit: x and y differ in length");
  const auto n = static_cast<Eigen::Index>(x.size());
  const Eigen::Index cols = degree + 1;
  if (n < cols + 1) {
    std::ostringstream msg;
    msg << "fit: need at least " << cols + 1 << " points for degree " << degree << ", got " << n;
    throw InvalidArgument(msg.str());
  }

  Eigen::MatrixXd vandermonde(n, cols);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double power = 1.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      vandermonde(i, j) = power;
      power *= x[i];
    }
    rhs(i) = y[i];
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vandermonde);
  if (qr.rank() < cols) {
    std::ostringstream msg;
    msg << "fit: design matrix is rank deficient (rank " << qr.rank() << " < " << cols
        << "); coherence values are not distinct enough for degree " << degree;
    throw NumericError(msg.str());
  }
  const Eigen::VectorXd coeffs = qr.solve(rhs);
  const Eigen::VectorXd residual = rhs - vandermonde * coeffs;

  FitResult fit;
  fit.degree = degree;
  fit.coefficients.assign(coeffs.data(), coeffs.data() + coeffs.size());
  fit.n_points = static_cast<std::size_t>(n);
  const double ss_res = residual.squaredNorm();
  const double ss_tot = (rhs.array() - rhs.mean()).matrix().squaredNorm();
  fit.rmse = std::sqrt(ss_res / static_cast<double>(n));
  if (ss_tot > 0.0) {
    fit.r_squared = 1.0 - ss_res / ss_tot;
  } else {
    // Constant data: a perfect fit counts as R^2 = 1.
    fit.r_squared = fit.rmse <= 1e-12 * (1.0 + std::abs(rhs.mean())) ? 1.0 : 0.0;
  }
  return fit;
}

/// Fits QFI against coherence for the records whose channel parameter lies in
/// `branch`. All selected records must share one probe kind and one tau.
inline FitResult fit_qfi_vs_coherence(std::span<const SweepRecord> records, int degree, Interval branch) {
  std::vector<double> c;
  std::vector<double> q;
  std::optional<ProbeKind> probe;
  std::optional<double> tau;
  for (const auto& r : records) {
    if (!branch.contains(r.channel_param)) continue;
    if (probe && *probe != r.probe) throw InvalidArgument("fit: records mix probe kinds");
    if (tau && *tau != r.tau) throw InvalidArgument("fit: records mix thermalization times");
    probe = r.probe;
    tau = r.tau;
    c.push_back(r.coherence);
    q.push_back(r.qfi.total);
  }
  FitResult fit = fit_polynomial(c, q, degree);
  fit.branch = branch;
  return fit;
}

}  // namespace gaussmet
