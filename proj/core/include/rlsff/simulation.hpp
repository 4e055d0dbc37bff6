#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "rlsff/batch.hpp"
#include "rlsff/estimator.hpp"

namespace rlsff {

/// Repeat one fixed regressor every step.
struct ConstantPolicy {
  Eigen::MatrixXd psi;
};

/// Cycle through a fixed list of regressors.
struct CyclingPolicy {
  std::vector<Eigen::MatrixXd> psis;
};

/// Independent Gaussian entries, scaled. Excitation is not guaranteed by
/// construction; verify with pe_analyze.
struct RandomGaussianPolicy {
  double scale = 1.0;
};

/// Cycle the columns of a random orthogonal matrix: column c of the i-th
/// regressor is column (i*n + c) mod m of Q. Every window of m consecutive
/// regressors sums to exactly n * I, so the sequence is persistently exciting
/// with S = m - 1 and alpha = beta = n.
struct RandomOrthonormalCyclePolicy {};

using RegressorPolicy =
    std::variant<ConstantPolicy, CyclingPolicy, RandomGaussianPolicy,
                 RandomOrthonormalCyclePolicy>;

struct ScenarioSpec {
  Eigen::Index m = 0;
  Eigen::Index n = 0;
  Eigen::VectorXd theta_true;
  RegressorPolicy policy;
  double noise_bound = 0.0;  ///< per-component uniform bound b on additive output noise
  long steps = 1;
  std::uint64_t seed = 0;
};

/// Per-step trace record. Row k (k = 1..steps) holds the sample consumed at
/// update k, the post-update estimate theta_hat_k, the innovation that drove
/// the update, and the truth diagnostics W_k and |err_k|^2 (NaN when the true
/// parameter is unknown).
struct TraceRow {
  long k = 0;
  Eigen::MatrixXd psi;
  Eigen::VectorXd y;
  Eigen::VectorXd theta_hat;
  Eigen::VectorXd innovation;
  double lyapunov = 0.0;
  double error_norm_sq = 0.0;
};

struct Trace {
  std::vector<TraceRow> rows;
  std::vector<EstimatorState> states;  ///< steps + 1 snapshots, initial state first
};

/// Generates y_{k+1} = psi_k^T theta_true + v_k with v_k drawn uniformly from
/// [-b, b] per component. Regressors are drawn before noise, so a fixed seed
/// yields the same regressor sequence for every noise bound; identical spec
/// reproduces identical data bit-for-bit.
History generate(const ScenarioSpec& spec);

/// generate() composed with estimator steps; truth diagnostics populated from
/// the scenario's theta_true.
Trace run(const ScenarioSpec& spec, const EstimatorConfig& config);

/// Runs the estimator over existing data. Estimator errors are rethrown with
/// the failing step index. theta_true, when present, fills the truth columns.
Trace run_over(const History& history, const EstimatorConfig& config,
               const std::optional<Eigen::VectorXd>& theta_true = std::nullopt);

}  // namespace rlsff
