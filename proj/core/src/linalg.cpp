#include "rlsff/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace rlsff {

bool is_symmetric(const Eigen::MatrixXd& A, double tol) {
  if (A.rows() != A.cols()) {
    return false;
  }
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  return (A - A.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

void symmetrize(Eigen::MatrixXd& A) {
  A = 0.5 * (A + A.transpose()).eval();
}

double min_symmetric_eigenvalue(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_symmetric_eigenvalue(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

bool is_spd(const Eigen::MatrixXd& A, double sym_tol) {
  if (!is_symmetric(A, sym_tol)) {
    return false;
  }
  return min_symmetric_eigenvalue(0.5 * (A + A.transpose())) > 0.0;
}

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& A) {
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("spd_inverse: Cholesky factorization failed");
  }
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(A.rows(), A.cols()));
  symmetrize(inv);
  return inv;
}

double relative_error(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double floor) {
  return (A - B).norm() / std::max(B.norm(), floor);
}

}  // namespace rlsff
