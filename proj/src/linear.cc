/*
 * Copyright 2026 The OCCER Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "occer/error.h"
#include "occer/regression.h"

namespace occer {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Centered {
  Eigen::MatrixXd x;  // column-major, column means removed
  Eigen::VectorXd y;
  Eigen::VectorXd x_mean;
  double y_mean = 0.0;
};

Centered Center(const Matrix& x, std::span<const double> y) {
  const auto n = static_cast<Eigen::Index>(x.rows());
  const auto p = static_cast<Eigen::Index>(x.cols());
  Centered c;
  c.x = Eigen::Map<const RowMatrix>(x.data().data(), n, p);
  c.y = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  c.x_mean = c.x.colwise().mean().transpose();
  c.y_mean = c.y.mean();
  c.x.rowwise() -= c.x_mean.transpose();
  c.y.array() -= c.y_mean;
  return c;
}

LinearParams ToParams(const Eigen::VectorXd& w, const Centered& c) {
  LinearParams params;
  params.coefficients.assign(w.data(), w.data() + w.size());
  params.intercept = c.y_mean - c.x_mean.dot(w);
  return params;
}

double SoftThreshold(double z, double gamma) {
  if (z > gamma) return z - gamma;
  if (z < -gamma) return z + gamma;
  return 0.0;
}

}  // namespace

double LinearParams::Predict(std::span<const double> x) const {
  double out = intercept;
  for (std::size_t j = 0; j < coefficients.size(); ++j) out += coefficients[j] * x[j];
  return out;
}

LinearParams FitRidge(const Matrix& x, std::span<const double> y, double alpha) {
  const Centered c = Center(x, y);
  Eigen::VectorXd w;
  if (alpha > 0.0) {
    Eigen::MatrixXd gram = c.x.transpose() * c.x;
    gram.diagonal().array() += alpha;
    w = gram.llt().solve(c.x.transpose() * c.y);
  } else {
    // Least squares, minimum-norm when X is rank deficient.
    w = c.x.completeOrthogonalDecomposition().solve(c.y);
  }
  if (!w.allFinite()) throw DataError("ridge solve produced non-finite coefficients");
  return ToParams(w, c);
}

double ElasticNetObjective(const Matrix& x, std::span<const double> y,
                           const LinearParams& params, double alpha, double l1_ratio) {
  const std::size_t n = x.rows();
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - params.Predict(x.row(i));
    rss += r * r;
  }
  double l1 = 0.0;
  double l2 = 0.0;
  for (double w : params.coefficients) {
    l1 += std::abs(w);
    l2 += w * w;
  }
  return rss / (2.0 * static_cast<double>(n)) +
         alpha * (l1_ratio * l1 + 0.5 * (1.0 - l1_ratio) * l2);
}

CoordinateDescentResult FitCoordinateDescent(const Matrix& x, std::span<const double> y,
                                             const CoordinateDescentOptions& options) {
  const Centered c = Center(x, y);
  const Eigen::Index n = c.x.rows();
  const Eigen::Index p = c.x.cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double l1_penalty = options.alpha * options.l1_ratio;
  const double l2_penalty = options.alpha * (1.0 - options.l1_ratio);

  const Eigen::VectorXd col_sq = c.x.colwise().squaredNorm().transpose() * inv_n;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd residual = c.y;

  // With centered data the optimal intercept is implied, so the objective
  // depends only on the residual and w.
  auto objective = [&] {
    return 0.5 * inv_n * residual.squaredNorm() +
           l1_penalty * w.lpNorm<1>() + 0.5 * l2_penalty * w.squaredNorm();
  };

  CoordinateDescentResult result;
  result.objective_trace.push_back(objective());
  for (std::size_t sweep = 0; sweep < options.max_iter; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double old = w[j];
      const double denom = col_sq[j] + l2_penalty;
      double updated = 0.0;
      if (denom > 0.0) {
        const double rho = inv_n * c.x.col(j).dot(residual) + col_sq[j] * old;
        updated = SoftThreshold(rho, l1_penalty) / denom;
      }
      if (updated != old) {
        residual -= (updated - old) * c.x.col(j);
        w[j] = updated;
        max_change = std::max(max_change, std::abs(updated - old));
      }
    }
    ++result.sweeps;
    result.objective_trace.push_back(objective());
    if (max_change < options.tolerance) break;
  }
  result.params = ToParams(w, c);
  return result;
}

}  // namespace occer
