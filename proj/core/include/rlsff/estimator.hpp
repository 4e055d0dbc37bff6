#pragma once

#include <Eigen/Dense>

#include "rlsff/errors.hpp"

namespace rlsff {

/// One timestep of data: the m-by-n regressor consumed at a step and the
/// n-vector output it predicts.
struct Sample {
  Eigen::MatrixXd psi;  ///< regressor, m x n
  Eigen::VectorXd y;    ///< measured output, length n
};

struct EstimatorConfig {
  Eigen::Index m = 0;        ///< parameter count
  Eigen::Index n = 0;        ///< output count
  double lambda = 0.0;       ///< forgetting factor, strictly inside (0, 1)
  Eigen::MatrixXd T;         ///< SPD output weight, n x n
  Eigen::MatrixXd P_init;    ///< SPD prior covariance, m x m
  Eigen::VectorXd theta_init;  ///< prior estimate, length m
};

/// Estimator state after k updates.
///
/// Index convention: a single covariance field is stored. At counter value k
/// it holds the covariance that the *next* update's gain uses, i.e. the
/// quantity indexed k-1 in the textbook recursion; step() consumes the pair
/// (psi_k, y_{k+1}). The information matrix P_inv is tracked in lockstep so
/// P * P_inv stays within 1e-6 of identity along any trace.
struct EstimatorState {
  Eigen::VectorXd theta_hat;
  Eigen::MatrixXd P;
  Eigen::MatrixXd P_inv;
  long k = 0;
};

/// Per-step diagnostics returned by step().
struct StepReport {
  Eigen::VectorXd innovation;  ///< y - psi^T theta_hat, before the update
  Eigen::MatrixXd gain;        ///< P psi D^{-1}, m x n
  Eigen::MatrixXd D;           ///< lambda T + psi^T P psi, n x n SPD
};

/// Recursive least squares with exponential forgetting for multiple-output
/// linear regression y_{k+1} = psi_k^T theta.
///
/// The estimator is a self-contained value: copyable, movable, no internal
/// sharing. A single instance must not be mutated concurrently; independent
/// instances may run in parallel.
class Estimator {
 public:
  /// Validates the configuration and seeds the state. Throws
  /// InvalidConfigError naming the offending field.
  explicit Estimator(EstimatorConfig config);

  /// One update. The covariance is advanced by both the direct recursion
  ///   P+ = lambda^{-1} (I - P psi D^{-1} psi^T) P
  /// and the information form
  ///   P_inv+ = lambda P_inv + psi T^{-1} psi^T,
  /// each symmetrized. Systems in D are solved by Cholesky factorization; no
  /// explicit inverse of D is formed. Throws InvalidInputError on dimension
  /// mismatch and NumericalDegeneracyError if the updated covariance loses
  /// positive definiteness (min eigenvalue below 1e-12 times the max). On
  /// throw the state is unchanged.
  StepReport step(const Sample& sample);

  /// Model-predicted output psi^T theta_hat.
  Eigen::VectorXd predict(const Eigen::MatrixXd& psi) const;

  /// Error transition M = I - P psi D^{-1} psi^T: in the noise-free case the
  /// estimation error obeys err+ = M err.
  Eigen::MatrixXd error_transition(const Eigen::MatrixXd& psi) const;

  const EstimatorState& state() const noexcept { return state_; }
  const EstimatorConfig& config() const noexcept { return config_; }

  /// T^{-1}, precomputed at construction (the information update needs it
  /// every step).
  const Eigen::MatrixXd& T_inverse() const noexcept { return T_inv_; }

  /// Lower Cholesky factor of T (T = L L^T).
  const Eigen::MatrixXd& T_sqrt_factor() const noexcept { return T_sqrt_; }

 private:
  Eigen::MatrixXd compute_D(const Eigen::MatrixXd& psi) const;
  void check_sample_dims(const Eigen::MatrixXd& psi, const Eigen::VectorXd* y) const;

  EstimatorConfig config_;
  Eigen::MatrixXd T_inv_;
  Eigen::MatrixXd T_sqrt_;
  EstimatorState state_;
};

/// Relative tolerance under which step() declares covariance degeneracy.
inline constexpr double kDegeneracyTol = 1e-12;

/// Config validation shared with file loading; throws InvalidConfigError.
void validate_config(const EstimatorConfig& config);

}  // namespace rlsff
