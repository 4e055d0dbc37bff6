#pragma once

#include <Eigen/Dense>

namespace rlsff {

/// max |A - A^T| <= tol * max(1, max |A|)
bool is_symmetric(const Eigen::MatrixXd& A, double tol = 1e-10);

/// A <- (A + A^T)/2
void symmetrize(Eigen::MatrixXd& A);

/// Smallest eigenvalue of a symmetric matrix.
double min_symmetric_eigenvalue(const Eigen::MatrixXd& A);

/// Largest eigenvalue of a symmetric matrix.
double max_symmetric_eigenvalue(const Eigen::MatrixXd& A);

/// Symmetry check plus strictly positive spectrum.
bool is_spd(const Eigen::MatrixXd& A, double sym_tol = 1e-10);

/// Inverse of an SPD matrix via Cholesky.
Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& A);

/// ||A - B|| / max(||B||, floor), Frobenius.
double relative_error(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                      double floor = 1e-300);

}  // namespace rlsff
