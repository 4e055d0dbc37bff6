#include "rlsff/excitation.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "rlsff/errors.hpp"
#include "rlsff/linalg.hpp"

namespace rlsff {

PEReport pe_analyze(const std::vector<Eigen::MatrixXd>& psis, long S) {
  if (S < 0) {
    throw InvalidInputError("window constant S must be nonnegative");
  }
  const long count = static_cast<long>(psis.size());
  if (count < S + 1) {
    throw InvalidInputError("sequence of length " + std::to_string(count) +
                            " has no complete window of " + std::to_string(S + 1) +
                            " regressors");
  }
  const Eigen::Index m = psis.front().rows();
  const Eigen::Index n = psis.front().cols();
  for (std::size_t i = 0; i < psis.size(); ++i) {
    if (psis[i].rows() != m || psis[i].cols() != n) {
      throw InvalidInputError("regressor " + std::to_string(i) + " has inconsistent dimensions");
    }
    if (!psis[i].allFinite()) {
      throw InvalidInputError("regressor " + std::to_string(i) + " has non-finite entries");
    }
  }

  PEReport report;
  report.S = S;
  report.alpha = std::numeric_limits<double>::infinity();
  report.beta = -std::numeric_limits<double>::infinity();

  Eigen::MatrixXd window(m, m);
  for (long j = 0; j + S < count; ++j) {
    window.setZero();
    for (long i = j; i <= j + S; ++i) {
      window.noalias() += psis[static_cast<std::size_t>(i)] *
                          psis[static_cast<std::size_t>(i)].transpose();
    }
    symmetrize(window);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(window, Eigen::EigenvaluesOnly);
    report.alpha = std::min(report.alpha, es.eigenvalues().minCoeff());
    report.beta = std::max(report.beta, es.eigenvalues().maxCoeff());
  }
  report.satisfied = report.alpha > 1e-12 * report.beta;
  return report;
}

std::optional<long> min_window_for_pe(const std::vector<Eigen::MatrixXd>& psis, long S_max) {
  if (psis.empty()) {
    throw InvalidInputError("regressor sequence must be nonempty");
  }
  const long feasible_max = std::min<long>(S_max, static_cast<long>(psis.size()) - 1);
  for (long S = 0; S <= feasible_max; ++S) {
    if (pe_analyze(psis, S).satisfied) {
      return S;
    }
  }
  return std::nullopt;
}

}  // namespace rlsff
