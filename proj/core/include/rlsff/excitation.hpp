#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace rlsff {

/// Persistence-of-excitation report over a finite regressor sequence.
///
/// alpha is the smallest and beta the largest eigenvalue over all complete
/// windows W_j = sum_{i=j}^{j+S} psi_i psi_i^T (S+1 terms, inclusive bounds).
/// A finite trace quantifies over its complete windows only, which
/// approximates the all-j definition.
struct PEReport {
  long S = 0;
  double alpha = 0.0;
  double beta = 0.0;
  bool satisfied = false;
};

/// Scans every complete window of S+1 consecutive regressors. satisfied
/// means alpha clears the eigenvalue tolerance 1e-12 * beta. Throws
/// InvalidInputError if the sequence is shorter than one window.
PEReport pe_analyze(const std::vector<Eigen::MatrixXd>& psis, long S);

/// Smallest S <= S_max with pe_analyze(psis, S).satisfied, or nullopt. Window
/// lengths exceeding the sequence are unsatisfiable and skipped.
std::optional<long> min_window_for_pe(const std::vector<Eigen::MatrixXd>& psis, long S_max);

}  // namespace rlsff
