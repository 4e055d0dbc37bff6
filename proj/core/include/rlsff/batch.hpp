#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rlsff/estimator.hpp"

namespace rlsff {

/// Ordered data history. Entry i-1 (0-based) is sample i: the pair
/// (psi_{i-1}, y_i), exactly what the recursive estimator consumes at its
/// i-th update. All samples must share dimensions.
using History = std::vector<Sample>;

/// Regressor sequence of a history, in order.
std::vector<Eigen::MatrixXd> regressors_of(const History& history);

enum class BatchMode { pure, regularized };

struct BatchPrior {
  Eigen::MatrixXd P_init;
  Eigen::VectorXd theta_init;
};

/// Exponentially discounted weighted least-squares cost
///   sum_{i=1}^{k} lambda^{k-i} (y_i - psi_{i-1}^T theta)^T T^{-1} (y_i - psi_{i-1}^T theta).
/// Zero iff every residual vanishes.
double objective(const Eigen::VectorXd& theta, const History& history, double lambda,
                 const Eigen::MatrixXd& T);

/// Gradient of the half-cost:
///   sum_{i=1}^{k} lambda^{k-i} psi_{i-1} T^{-1} (psi_{i-1}^T theta - y_i).
/// Central finite differences of objective() equal exactly twice this value.
Eigen::VectorXd objective_gradient(const Eigen::VectorXd& theta, const History& history,
                                   double lambda, const Eigen::MatrixXd& T);

/// Direct minimizer of the discounted cost via the normal equations.
///
/// pure: (sum lambda^{k-i} psi T^{-1} psi^T)^{-1} sum lambda^{k-i} psi T^{-1} y_i.
/// Requires the normal matrix to be numerically nonsingular (guaranteed under
/// persistence of excitation once k covers a full window); otherwise throws
/// RankDeficiencyError reporting the smallest singular value.
///
/// regularized: adds the prior terms lambda^k P_init^{-1} and
/// lambda^k P_init^{-1} theta_init, which reconstructs the recursive estimate
/// exactly at every k >= 1. Requires `prior`.
///
/// This is the independent correctness oracle for the recursive path: it
/// solves factorized normal equations assembled from scratch and shares no
/// code with Estimator::step().
Eigen::VectorXd batch_minimize(const History& history, double lambda,
                               const Eigen::MatrixXd& T, BatchMode mode,
                               const std::optional<BatchPrior>& prior = std::nullopt);

}  // namespace rlsff
