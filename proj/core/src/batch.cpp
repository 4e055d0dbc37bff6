#include "rlsff/batch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rlsff/linalg.hpp"

namespace rlsff {

namespace {

// Singularity threshold for the pure-mode normal matrix, relative to its
// largest diagonal entry.
constexpr double kSingularityTol = 1e-10;

struct CheckedHistory {
  Eigen::Index m;
  Eigen::Index n;
};

CheckedHistory check_inputs(const History& history, double lambda, const Eigen::MatrixXd& T) {
  if (history.empty()) {
    throw InvalidInputError("history must contain at least one sample");
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw InvalidInputError("forgetting factor must lie strictly in (0, 1)");
  }
  const Eigen::Index m = history.front().psi.rows();
  const Eigen::Index n = history.front().psi.cols();
  for (std::size_t i = 0; i < history.size(); ++i) {
    const Sample& s = history[i];
    if (s.psi.rows() != m || s.psi.cols() != n || s.y.size() != n) {
      throw InvalidInputError("sample " + std::to_string(i + 1) +
                              " has inconsistent dimensions");
    }
  }
  if (T.rows() != n || T.cols() != n) {
    throw InvalidInputError("output weight T must be " + std::to_string(n) + "x" +
                            std::to_string(n));
  }
  if (!is_spd(T)) {
    throw InvalidInputError("output weight T must be symmetric positive definite");
  }
  return {m, n};
}

Eigen::LLT<Eigen::MatrixXd> factorize_T(const Eigen::MatrixXd& T) {
  Eigen::LLT<Eigen::MatrixXd> llt(T);
  if (llt.info() != Eigen::Success) {
    throw InvalidInputError("output weight T failed Cholesky factorization");
  }
  return llt;
}

}  // namespace

std::vector<Eigen::MatrixXd> regressors_of(const History& history) {
  std::vector<Eigen::MatrixXd> psis;
  psis.reserve(history.size());
  for (const Sample& s : history) {
    psis.push_back(s.psi);
  }
  return psis;
}

double objective(const Eigen::VectorXd& theta, const History& history, double lambda,
                 const Eigen::MatrixXd& T) {
  const auto dims = check_inputs(history, lambda, T);
  if (theta.size() != dims.m) {
    throw InvalidInputError("theta must have length " + std::to_string(dims.m));
  }
  const auto T_llt = factorize_T(T);

  const std::size_t k = history.size();
  double cost = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    const Sample& s = history[i - 1];
    const Eigen::VectorXd residual = s.y - s.psi.transpose() * theta;
    const double weight = std::pow(lambda, static_cast<double>(k - i));
    cost += weight * residual.dot(T_llt.solve(residual));
  }
  return cost;
}

Eigen::VectorXd objective_gradient(const Eigen::VectorXd& theta, const History& history,
                                   double lambda, const Eigen::MatrixXd& T) {
  const auto dims = check_inputs(history, lambda, T);
  if (theta.size() != dims.m) {
    throw InvalidInputError("theta must have length " + std::to_string(dims.m));
  }
  const auto T_llt = factorize_T(T);

  const std::size_t k = history.size();
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(dims.m);
  for (std::size_t i = 1; i <= k; ++i) {
    const Sample& s = history[i - 1];
    const double weight = std::pow(lambda, static_cast<double>(k - i));
    grad += weight * (s.psi * T_llt.solve(s.psi.transpose() * theta - s.y));
  }
  return grad;
}

Eigen::VectorXd batch_minimize(const History& history, double lambda,
                               const Eigen::MatrixXd& T, BatchMode mode,
                               const std::optional<BatchPrior>& prior) {
  const auto dims = check_inputs(history, lambda, T);
  const auto T_llt = factorize_T(T);

  const std::size_t k = history.size();
  Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(dims.m, dims.m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dims.m);
  for (std::size_t i = 1; i <= k; ++i) {
    const Sample& s = history[i - 1];
    const double weight = std::pow(lambda, static_cast<double>(k - i));
    normal.noalias() += weight * (s.psi * T_llt.solve(s.psi.transpose()));
    rhs.noalias() += weight * (s.psi * T_llt.solve(s.y));
  }
  symmetrize(normal);

  if (mode == BatchMode::regularized) {
    if (!prior.has_value()) {
      throw InvalidInputError("regularized mode requires a prior (P_init, theta_init)");
    }
    if (prior->P_init.rows() != dims.m || prior->P_init.cols() != dims.m ||
        prior->theta_init.size() != dims.m) {
      throw InvalidInputError("prior dimensions do not match the history");
    }
    if (!is_spd(prior->P_init)) {
      throw InvalidInputError("prior covariance must be symmetric positive definite");
    }
    const Eigen::MatrixXd P0_inv = spd_inverse(prior->P_init);
    const double prior_weight = std::pow(lambda, static_cast<double>(k));
    normal += prior_weight * P0_inv;
    rhs += prior_weight * (P0_inv * prior->theta_init);
    symmetrize(normal);

    Eigen::LLT<Eigen::MatrixXd> llt(normal);
    if (llt.info() != Eigen::Success) {
      throw RankDeficiencyError(min_symmetric_eigenvalue(normal),
                                "regularized normal matrix failed factorization");
    }
    return llt.solve(rhs);
  }

  // Pure mode: the normal matrix is only PSD until enough excitation has
  // accumulated; gate the solve on its spectrum.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normal, Eigen::EigenvaluesOnly);
  const double smallest_sv = es.eigenvalues().cwiseAbs().minCoeff();
  const double max_diag = normal.diagonal().maxCoeff();
  if (!(max_diag > 0.0) || smallest_sv < kSingularityTol * max_diag) {
    throw RankDeficiencyError(smallest_sv,
                              "normal matrix is numerically singular (smallest singular value " +
                                  std::to_string(smallest_sv) + ")");
  }
  return Eigen::LDLT<Eigen::MatrixXd>(normal).solve(rhs);
}

}  // namespace rlsff
