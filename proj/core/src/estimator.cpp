#include "rlsff/estimator.hpp"

#include <string>
#include <utility>

#include "rlsff/linalg.hpp"

namespace rlsff {

namespace {

void require_spd(const Eigen::MatrixXd& A, Eigen::Index dim, const char* field) {
  if (A.rows() != dim || A.cols() != dim) {
    throw InvalidConfigError(field, "expected " + std::to_string(dim) + "x" +
                                        std::to_string(dim) + " matrix, got " +
                                        std::to_string(A.rows()) + "x" +
                                        std::to_string(A.cols()));
  }
  if (!A.allFinite()) {
    throw InvalidConfigError(field, "matrix has non-finite entries");
  }
  if (!is_symmetric(A)) {
    throw InvalidConfigError(field, "matrix is not symmetric within tolerance");
  }
  const double min_eig = min_symmetric_eigenvalue(A);
  if (!(min_eig > 0.0)) {
    throw InvalidConfigError(field, "matrix is not positive definite (min eigenvalue " +
                                        std::to_string(min_eig) + ")");
  }
}

}  // namespace

void validate_config(const EstimatorConfig& config) {
  if (config.m < 1) {
    throw InvalidConfigError("m", "parameter count must be >= 1");
  }
  if (config.n < 1) {
    throw InvalidConfigError("n", "output count must be >= 1");
  }
  if (!(config.lambda > 0.0 && config.lambda < 1.0)) {
    throw InvalidConfigError("lambda", "forgetting factor must lie strictly in (0, 1)");
  }
  require_spd(config.T, config.n, "T");
  require_spd(config.P_init, config.m, "P_init");
  if (config.theta_init.size() != config.m) {
    throw InvalidConfigError("theta_init", "expected length " + std::to_string(config.m) +
                                               ", got " +
                                               std::to_string(config.theta_init.size()));
  }
  if (!config.theta_init.allFinite()) {
    throw InvalidConfigError("theta_init", "vector has non-finite entries");
  }
}

Estimator::Estimator(EstimatorConfig config) : config_(std::move(config)) {
  validate_config(config_);

  Eigen::LLT<Eigen::MatrixXd> T_llt(config_.T);
  if (T_llt.info() != Eigen::Success) {
    throw InvalidConfigError("T", "Cholesky factorization failed");
  }
  T_inv_ = T_llt.solve(Eigen::MatrixXd::Identity(config_.n, config_.n));
  symmetrize(T_inv_);
  T_sqrt_ = T_llt.matrixL();

  state_.theta_hat = config_.theta_init;
  state_.P = config_.P_init;
  state_.P_inv = spd_inverse(config_.P_init);
  state_.k = 0;
}

void Estimator::check_sample_dims(const Eigen::MatrixXd& psi, const Eigen::VectorXd* y) const {
  if (psi.rows() != config_.m || psi.cols() != config_.n) {
    throw InvalidInputError("regressor must be " + std::to_string(config_.m) + "x" +
                            std::to_string(config_.n) + ", got " +
                            std::to_string(psi.rows()) + "x" + std::to_string(psi.cols()));
  }
  if (!psi.allFinite()) {
    throw InvalidInputError("regressor has non-finite entries");
  }
  if (y != nullptr) {
    if (y->size() != config_.n) {
      throw InvalidInputError("output must have length " + std::to_string(config_.n) +
                              ", got " + std::to_string(y->size()));
    }
    if (!y->allFinite()) {
      throw InvalidInputError("output has non-finite entries");
    }
  }
}

Eigen::MatrixXd Estimator::compute_D(const Eigen::MatrixXd& psi) const {
  Eigen::MatrixXd D = config_.lambda * config_.T + psi.transpose() * state_.P * psi;
  symmetrize(D);
  return D;
}

StepReport Estimator::step(const Sample& sample) {
  check_sample_dims(sample.psi, &sample.y);

  const Eigen::MatrixXd& psi = sample.psi;
  const Eigen::MatrixXd P_psi = state_.P * psi;  // P symmetric, so this is P psi

  Eigen::MatrixXd D = config_.lambda * config_.T + psi.transpose() * P_psi;
  symmetrize(D);
  Eigen::LLT<Eigen::MatrixXd> D_llt(D);
  if (D_llt.info() != Eigen::Success) {
    throw NumericalDegeneracyError(min_symmetric_eigenvalue(D),
                                   "gain denominator D is not positive definite");
  }

  // gain = P psi D^{-1}; solve D X = (P psi)^T instead of inverting D.
  const Eigen::MatrixXd gain = D_llt.solve(P_psi.transpose()).transpose();

  const Eigen::VectorXd innovation = sample.y - psi.transpose() * state_.theta_hat;

  Eigen::MatrixXd P_next = (state_.P - gain * P_psi.transpose()) / config_.lambda;
  symmetrize(P_next);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P_next, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  const double max_eig = es.eigenvalues().maxCoeff();
  if (min_eig < kDegeneracyTol * max_eig) {
    throw NumericalDegeneracyError(
        min_eig, "covariance lost positive definiteness at step " +
                     std::to_string(state_.k) + " (min eigenvalue " +
                     std::to_string(min_eig) + ")");
  }

  Eigen::MatrixXd P_inv_next = config_.lambda * state_.P_inv + psi * T_inv_ * psi.transpose();
  symmetrize(P_inv_next);

  state_.theta_hat += gain * innovation;
  state_.P = std::move(P_next);
  state_.P_inv = std::move(P_inv_next);
  ++state_.k;

  return StepReport{innovation, gain, std::move(D)};
}

Eigen::VectorXd Estimator::predict(const Eigen::MatrixXd& psi) const {
  check_sample_dims(psi, nullptr);
  return psi.transpose() * state_.theta_hat;
}

Eigen::MatrixXd Estimator::error_transition(const Eigen::MatrixXd& psi) const {
  check_sample_dims(psi, nullptr);
  const Eigen::MatrixXd P_psi = state_.P * psi;
  Eigen::MatrixXd D = config_.lambda * config_.T + psi.transpose() * P_psi;
  symmetrize(D);
  Eigen::LLT<Eigen::MatrixXd> D_llt(D);
  if (D_llt.info() != Eigen::Success) {
    throw NumericalDegeneracyError(min_symmetric_eigenvalue(D),
                                   "gain denominator D is not positive definite");
  }
  const Eigen::MatrixXd gain = D_llt.solve(P_psi.transpose()).transpose();
  return Eigen::MatrixXd::Identity(config_.m, config_.m) - gain * psi.transpose();
}

}  // namespace rlsff
