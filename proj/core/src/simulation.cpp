#include "rlsff/simulation.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "rlsff/convergence.hpp"
#include "rlsff/errors.hpp"

namespace rlsff {

namespace {

void validate_spec(const ScenarioSpec& spec) {
  if (spec.m < 1 || spec.n < 1) {
    throw InvalidInputError("scenario dimensions must satisfy m >= 1, n >= 1");
  }
  if (spec.theta_true.size() != spec.m || !spec.theta_true.allFinite()) {
    throw InvalidInputError("theta_true must be a finite vector of length " +
                            std::to_string(spec.m));
  }
  if (!(spec.noise_bound >= 0.0) || !std::isfinite(spec.noise_bound)) {
    throw InvalidInputError("noise_bound must be finite and nonnegative");
  }
  if (spec.steps < 1) {
    throw InvalidInputError("steps must be >= 1");
  }
  if (const auto* constant = std::get_if<ConstantPolicy>(&spec.policy)) {
    if (constant->psi.rows() != spec.m || constant->psi.cols() != spec.n) {
      throw InvalidInputError("constant policy regressor must be " + std::to_string(spec.m) +
                              "x" + std::to_string(spec.n));
    }
  } else if (const auto* cycling = std::get_if<CyclingPolicy>(&spec.policy)) {
    if (cycling->psis.empty()) {
      throw InvalidInputError("cycling policy needs at least one regressor");
    }
    for (const Eigen::MatrixXd& psi : cycling->psis) {
      if (psi.rows() != spec.m || psi.cols() != spec.n) {
        throw InvalidInputError("cycling policy regressors must be " + std::to_string(spec.m) +
                                "x" + std::to_string(spec.n));
      }
    }
  } else if (const auto* gaussian = std::get_if<RandomGaussianPolicy>(&spec.policy)) {
    if (!std::isfinite(gaussian->scale)) {
      throw InvalidInputError("random_gaussian scale must be finite");
    }
  }
}

std::vector<Eigen::MatrixXd> make_regressors(const ScenarioSpec& spec, std::mt19937_64& rng) {
  std::vector<Eigen::MatrixXd> psis;
  psis.reserve(static_cast<std::size_t>(spec.steps));

  if (const auto* constant = std::get_if<ConstantPolicy>(&spec.policy)) {
    psis.assign(static_cast<std::size_t>(spec.steps), constant->psi);
  } else if (const auto* cycling = std::get_if<CyclingPolicy>(&spec.policy)) {
    for (long k = 0; k < spec.steps; ++k) {
      psis.push_back(cycling->psis[static_cast<std::size_t>(k) % cycling->psis.size()]);
    }
  } else if (const auto* gaussian = std::get_if<RandomGaussianPolicy>(&spec.policy)) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (long k = 0; k < spec.steps; ++k) {
      Eigen::MatrixXd psi(spec.m, spec.n);
      for (Eigen::Index r = 0; r < spec.m; ++r) {
        for (Eigen::Index c = 0; c < spec.n; ++c) {
          psi(r, c) = gaussian->scale * normal(rng);
        }
      }
      psis.push_back(std::move(psi));
    }
  } else {
    // Orthonormal cycle: Q from the QR factorization of a Gaussian matrix.
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd seed_matrix(spec.m, spec.m);
    for (Eigen::Index r = 0; r < spec.m; ++r) {
      for (Eigen::Index c = 0; c < spec.m; ++c) {
        seed_matrix(r, c) = normal(rng);
      }
    }
    const Eigen::MatrixXd Q =
        Eigen::HouseholderQR<Eigen::MatrixXd>(seed_matrix).householderQ();
    for (long k = 0; k < spec.steps; ++k) {
      Eigen::MatrixXd psi(spec.m, spec.n);
      for (Eigen::Index c = 0; c < spec.n; ++c) {
        psi.col(c) = Q.col((static_cast<Eigen::Index>(k) * spec.n + c) % spec.m);
      }
      psis.push_back(std::move(psi));
    }
  }
  return psis;
}

}  // namespace

History generate(const ScenarioSpec& spec) {
  validate_spec(spec);
  std::mt19937_64 rng(spec.seed);

  // Regressors first, noise second: the regressor stream is unaffected by the
  // noise bound for a fixed seed.
  std::vector<Eigen::MatrixXd> psis = make_regressors(spec, rng);

  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  History history;
  history.reserve(psis.size());
  for (Eigen::MatrixXd& psi : psis) {
    Eigen::VectorXd noise(spec.n);
    for (Eigen::Index j = 0; j < spec.n; ++j) {
      noise(j) = spec.noise_bound * unit(rng);
    }
    Eigen::VectorXd y = psi.transpose() * spec.theta_true + noise;
    history.push_back(Sample{std::move(psi), std::move(y)});
  }
  return history;
}

Trace run(const ScenarioSpec& spec, const EstimatorConfig& config) {
  if (spec.m != config.m || spec.n != config.n) {
    throw InvalidInputError("scenario dimensions (" + std::to_string(spec.m) + "," +
                            std::to_string(spec.n) + ") do not match the estimator config (" +
                            std::to_string(config.m) + "," + std::to_string(config.n) + ")");
  }
  return run_over(generate(spec), config, spec.theta_true);
}

Trace run_over(const History& history, const EstimatorConfig& config,
               const std::optional<Eigen::VectorXd>& theta_true) {
  Estimator estimator(config);
  if (theta_true.has_value() && theta_true->size() != config.m) {
    throw InvalidInputError("theta_true must have length " + std::to_string(config.m));
  }

  Trace trace;
  trace.rows.reserve(history.size());
  trace.states.reserve(history.size() + 1);
  trace.states.push_back(estimator.state());

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < history.size(); ++i) {
    StepReport report;
    try {
      report = estimator.step(history[i]);
    } catch (const NumericalDegeneracyError& e) {
      throw NumericalDegeneracyError(e.eigenvalue(),
                                     "step " + std::to_string(i + 1) + ": " + e.what());
    } catch (const InvalidInputError& e) {
      throw InvalidInputError("step " + std::to_string(i + 1) + ": " + e.what());
    }

    TraceRow row;
    row.k = static_cast<long>(i + 1);
    row.psi = history[i].psi;
    row.y = history[i].y;
    row.theta_hat = estimator.state().theta_hat;
    row.innovation = report.innovation;
    if (theta_true.has_value()) {
      row.lyapunov = lyapunov_value(estimator.state(), *theta_true);
      row.error_norm_sq = (*theta_true - estimator.state().theta_hat).squaredNorm();
    } else {
      row.lyapunov = nan;
      row.error_norm_sq = nan;
    }
    trace.rows.push_back(std::move(row));
    trace.states.push_back(estimator.state());
  }
  return trace;
}

}  // namespace rlsff
