#include "rlsff/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rlsff/linalg.hpp"

namespace rlsff {

namespace {

constexpr double kDecaySlack = 1e-10;

void check_bound_inputs(double alpha, double lambda, long S) {
  if (!(alpha > 0.0)) {
    throw InvalidInputError("excitation constant alpha must be positive");
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw InvalidInputError("forgetting factor must lie strictly in (0, 1)");
  }
  if (S < 0) {
    throw InvalidInputError("window constant S must be nonnegative");
  }
}

void check_truth(const EstimatorState& state, const Eigen::VectorXd& theta_true) {
  if (theta_true.size() != state.theta_hat.size()) {
    throw InvalidInputError("theta_true must have length " +
                            std::to_string(state.theta_hat.size()));
  }
}

double min_eig_T_inverse(const Eigen::MatrixXd& T) {
  if (!is_spd(T)) {
    throw InvalidInputError("output weight T must be symmetric positive definite");
  }
  return 1.0 / max_symmetric_eigenvalue(T);
}

}  // namespace

double p_inv_lower_bound(double alpha, double lambda, long S, const Eigen::MatrixXd& T) {
  check_bound_inputs(alpha, lambda, S);
  const double numerator = min_eig_T_inverse(T) * alpha * (1.0 / lambda - 1.0);
  const double denominator = std::pow(lambda, -static_cast<double>(S + 1)) - 1.0;
  return numerator / denominator;
}

double gamma(double alpha, double lambda, long S, const Eigen::MatrixXd& T,
             const Eigen::MatrixXd& P_init) {
  check_bound_inputs(alpha, lambda, S);
  if (!is_spd(P_init)) {
    throw InvalidInputError("prior covariance must be symmetric positive definite");
  }
  const double max_eig_P_init_inv = 1.0 / min_symmetric_eigenvalue(P_init);
  const double numerator = std::pow(lambda, -static_cast<double>(S + 1)) - 1.0;
  const double denominator = min_eig_T_inverse(T) * alpha * (1.0 / lambda - 1.0);
  return numerator / denominator * max_eig_P_init_inv;
}

double lyapunov_value(const EstimatorState& state, const Eigen::VectorXd& theta_true) {
  check_truth(state, theta_true);
  const Eigen::VectorXd err = theta_true - state.theta_hat;
  return err.dot(state.P_inv * err);
}

double lyapunov_difference(const EstimatorState& state, const Sample& sample, double lambda,
                           const Eigen::MatrixXd& T, const Eigen::VectorXd& theta_true) {
  check_truth(state, theta_true);
  if (sample.psi.rows() != state.theta_hat.size() || sample.psi.cols() != T.rows()) {
    throw InvalidInputError("sample dimensions do not match the state");
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw InvalidInputError("forgetting factor must lie strictly in (0, 1)");
  }
  const Eigen::VectorXd err = theta_true - state.theta_hat;

  Eigen::MatrixXd D = lambda * T + sample.psi.transpose() * state.P * sample.psi;
  symmetrize(D);
  Eigen::LLT<Eigen::MatrixXd> D_llt(D);
  if (D_llt.info() != Eigen::Success) {
    throw NumericalDegeneracyError(min_symmetric_eigenvalue(D),
                                   "gain denominator D is not positive definite");
  }

  const Eigen::VectorXd projected = sample.psi.transpose() * err;
  const double quadratic = projected.dot(D_llt.solve(projected));
  return (lambda - 1.0) * err.dot(state.P_inv * err) - lambda * quadratic;
}

CMatrixReport c_matrix_check(const Eigen::MatrixXd& P, const Eigen::MatrixXd& psi,
                             const Eigen::MatrixXd& T, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw InvalidInputError("forgetting factor must lie strictly in (0, 1)");
  }
  if (!is_spd(P)) {
    throw InvalidInputError("covariance P must be symmetric positive definite");
  }
  if (!is_spd(T)) {
    throw InvalidInputError("output weight T must be symmetric positive definite");
  }
  if (psi.rows() != P.rows() || psi.cols() != T.rows()) {
    throw InvalidInputError("regressor dimensions do not match P and T");
  }

  const Eigen::Index n = T.rows();
  const Eigen::MatrixXd I_n = Eigen::MatrixXd::Identity(n, n);
  Eigen::LLT<Eigen::MatrixXd> T_llt(T);
  const Eigen::MatrixXd T_inv = T_llt.solve(I_n);

  Eigen::MatrixXd D = lambda * T + psi.transpose() * P * psi;
  symmetrize(D);
  Eigen::LLT<Eigen::MatrixXd> D_llt(D);
  if (D_llt.info() != Eigen::Success) {
    throw NumericalDegeneracyError(min_symmetric_eigenvalue(D),
                                   "gain denominator D is not positive definite");
  }
  const Eigen::MatrixXd D_inv = D_llt.solve(I_n);
  const Eigen::MatrixXd G = psi.transpose() * P * psi;  // n x n

  const Eigen::MatrixXd inner_terms[6] = {
      T_inv,
      -D_inv * G * T_inv,
      -lambda * D_inv,
      -T_inv * G * D_inv,
      lambda * D_inv * G * D_inv,
      D_inv * G * T_inv * G * D_inv,
  };

  CMatrixReport report;
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(psi.rows(), psi.rows());
  for (const Eigen::MatrixXd& inner : inner_terms) {
    const Eigen::MatrixXd term = psi * inner * psi.transpose();
    report.term_scale = std::max(report.term_scale, term.cwiseAbs().maxCoeff());
    total += term;
  }
  report.residual = total.cwiseAbs().maxCoeff();
  return report;
}

double c_matrix_residual(const Eigen::MatrixXd& P, const Eigen::MatrixXd& psi,
                         const Eigen::MatrixXd& T, double lambda) {
  return c_matrix_check(P, psi, T, lambda).residual;
}

DecayReport verify_decay(const std::vector<EstimatorState>& trace,
                         const Eigen::VectorXd& theta_true, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw InvalidInputError("forgetting factor must lie strictly in (0, 1)");
  }
  DecayReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  if (trace.size() < 2) {
    report.passed = true;
    report.worst_margin = 0.0;
    return report;
  }
  double W_prev = lyapunov_value(trace.front(), theta_true);
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const double W_next = lyapunov_value(trace[i], theta_true);
    const double margin = lambda * W_prev - W_next;
    report.worst_margin = std::min(report.worst_margin, margin);
    if (W_next > lambda * W_prev + kDecaySlack * (1.0 + W_prev)) {
      ++report.violations;
      if (report.first_violation < 0) {
        report.first_violation = static_cast<long>(i - 1);
      }
    }
    ++report.pairs_checked;
    W_prev = W_next;
  }
  report.passed = report.violations == 0;
  return report;
}

BoundReport verify_error_bound(const std::vector<EstimatorState>& trace,
                               const Eigen::VectorXd& theta_true,
                               const ConvergenceCertificate& certificate) {
  BoundReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  if (trace.empty()) {
    report.passed = true;
    report.worst_margin = 0.0;
    return report;
  }
  check_truth(trace.front(), theta_true);
  const double err0_sq = (theta_true - trace.front().theta_hat).squaredNorm();
  for (std::size_t i = static_cast<std::size_t>(std::max<long>(certificate.S, 0));
       i < trace.size(); ++i) {
    const double err_sq = (theta_true - trace[i].theta_hat).squaredNorm();
    const double bound =
        certificate.gamma * std::pow(certificate.lambda, static_cast<double>(i)) * err0_sq;
    const double margin = bound - err_sq;
    report.worst_margin = std::min(report.worst_margin, margin);
    if (err_sq > bound) {
      ++report.violations;
      if (report.first_violation < 0) {
        report.first_violation = static_cast<long>(i);
      }
    }
    ++report.steps_checked;
  }
  if (report.steps_checked == 0) {
    report.worst_margin = 0.0;
  }
  report.passed = report.violations == 0;
  return report;
}

ConvergenceCertificate make_certificate(double alpha, double lambda, long S,
                                        const Eigen::MatrixXd& T,
                                        const Eigen::MatrixXd& P_init) {
  ConvergenceCertificate cert;
  cert.p_inv_lower_bound = p_inv_lower_bound(alpha, lambda, S, T);
  cert.gamma = gamma(alpha, lambda, S, T, P_init);
  cert.lambda = lambda;
  cert.S = S;
  return cert;
}

void attach_trace(ConvergenceCertificate& certificate,
                  const std::vector<EstimatorState>& trace,
                  const Eigen::VectorXd& theta_true) {
  certificate.trace.clear();
  if (trace.empty()) {
    return;
  }
  const double err0_sq = (theta_true - trace.front().theta_hat).squaredNorm();
  certificate.trace.reserve(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    CertificateRow row;
    row.k = trace[i].k;
    row.lyapunov = lyapunov_value(trace[i], theta_true);
    row.error_norm_sq = (theta_true - trace[i].theta_hat).squaredNorm();
    row.bound_value =
        certificate.gamma * std::pow(certificate.lambda, static_cast<double>(i)) * err0_sq;
    certificate.trace.push_back(row);
  }
}

}  // namespace rlsff
