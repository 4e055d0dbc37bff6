#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rlsff/estimator.hpp"

namespace rlsff {

struct CertificateRow {
  long k = 0;
  double lyapunov = 0.0;       ///< W_k
  double error_norm_sq = 0.0;  ///< |theta - theta_hat_k|^2
  double bound_value = 0.0;    ///< gamma * lambda^k * |err_0|^2
};

/// Quantitative exponential-convergence certificate for a PE trace.
struct ConvergenceCertificate {
  double p_inv_lower_bound = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
  long S = 0;
  std::vector<CertificateRow> trace;
};

/// Uniform lower bound on the information matrix once a full excitation
/// window has passed:
///   lambda_min(T^{-1}) * alpha * (lambda^{-1} - 1) / (lambda^{-(S+1)} - 1).
double p_inv_lower_bound(double alpha, double lambda, long S, const Eigen::MatrixXd& T);

/// Exponential error-bound constant
///   (lambda^{-(S+1)} - 1) / (lambda_min(T^{-1}) * alpha * (lambda^{-1} - 1))
///     * lambda_max(P_init^{-1}),
/// so that |err_k|^2 <= gamma * lambda^k * |err_0|^2 for k >= S on noise-free
/// PE traces. gamma * p_inv_lower_bound == lambda_max(P_init^{-1}).
double gamma(double alpha, double lambda, long S, const Eigen::MatrixXd& T,
             const Eigen::MatrixXd& P_init);

/// Lyapunov value W_k = err^T P_inv err with err = theta_true - theta_hat,
/// using the state's tracked information matrix.
double lyapunov_value(const EstimatorState& state, const Eigen::VectorXd& theta_true);

/// Predicted one-step Lyapunov difference
///   err^T [ (lambda - 1) P_inv - lambda psi D^{-1} psi^T ] err,
/// which on noise-free data equals W_{k+1} - W_k measured directly.
double lyapunov_difference(const EstimatorState& state, const Sample& sample, double lambda,
                           const Eigen::MatrixXd& T, const Eigen::VectorXd& theta_true);

struct CMatrixReport {
  double residual = 0.0;    ///< largest absolute entry of the six-term sum
  double term_scale = 0.0;  ///< largest entry magnitude among the six terms
};

/// Evaluates the six-term matrix
///   C = psi [ T^{-1} - D^{-1} G T^{-1} - lambda D^{-1} - T^{-1} G D^{-1}
///             + lambda D^{-1} G D^{-1} + D^{-1} G T^{-1} G D^{-1} ] psi^T,
/// with G = psi^T P psi and D = lambda T + psi^T P psi. C is identically zero
/// in exact arithmetic; the residual must stay below
/// 1e-10 * (1 + term_scale) in floating point.
CMatrixReport c_matrix_check(const Eigen::MatrixXd& P, const Eigen::MatrixXd& psi,
                             const Eigen::MatrixXd& T, double lambda);

/// Largest absolute entry of C; see c_matrix_check.
double c_matrix_residual(const Eigen::MatrixXd& P, const Eigen::MatrixXd& psi,
                         const Eigen::MatrixXd& T, double lambda);

struct DecayReport {
  long pairs_checked = 0;
  long violations = 0;
  long first_violation = -1;   ///< index k of the first violated pair, -1 if none
  double worst_margin = 0.0;   ///< min over k of lambda * W_k - W_{k+1}
  bool passed = false;
};

/// Checks W_{k+1} <= lambda * W_k + 1e-10 * (1 + W_k) over every consecutive
/// pair of states. Violations are reported, never thrown; the inequality only
/// holds in the noise-free model.
DecayReport verify_decay(const std::vector<EstimatorState>& trace,
                         const Eigen::VectorXd& theta_true, double lambda);

struct BoundReport {
  long steps_checked = 0;
  long violations = 0;
  long first_violation = -1;
  double worst_margin = 0.0;  ///< min over k of bound_k - |err_k|^2
  bool passed = false;
};

/// Checks |err_k|^2 <= gamma * lambda^k * |err_0|^2 for every k >= S in the
/// trace, with the constants taken from the certificate.
BoundReport verify_error_bound(const std::vector<EstimatorState>& trace,
                               const Eigen::VectorXd& theta_true,
                               const ConvergenceCertificate& certificate);

/// Builds the certificate constants from PE constants and the prior.
ConvergenceCertificate make_certificate(double alpha, double lambda, long S,
                                        const Eigen::MatrixXd& T,
                                        const Eigen::MatrixXd& P_init);

/// Fills certificate.trace with per-step rows (k, W_k, |err_k|^2, bound_k).
void attach_trace(ConvergenceCertificate& certificate,
                  const std::vector<EstimatorState>& trace,
                  const Eigen::VectorXd& theta_true);

}  // namespace rlsff
