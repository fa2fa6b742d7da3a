#include "gecm/ecm.hpp"

#include <cmath>

#include "gecm/bessel.hpp"
#include "gecm/errors.hpp"

namespace gecm {

std::vector<double> HyperParams::default_kappa0_grid() {
  std::vector<double> grid(51);
  for (int i = 0; i < 51; ++i) grid[i] = 0.01 * (i + 1);
  return grid;
}

void HyperParams::validate() const {
  if (!(kappa0 > 0.0 && kappa1 > 0.0)) throw ConfigError("hyperparams: kappa0, kappa1 must be positive");
  if (!(kappa0 < kappa1)) throw ConfigError("hyperparams: need kappa0 < kappa1");
  if (!(lambda_tau > 0.0 && a_rho > 0.0 && b_rho > 0.0 && c_theta > 0.0 && d_theta > 0.0))
    throw ConfigError("hyperparams: prior parameters must be positive");
  if (!(eta_fixed > 0.0)) throw ConfigError("hyperparams: eta_fixed must be positive");
  if (eta_grid.empty()) throw ConfigError("hyperparams: eta grid is empty");
  for (std::size_t i = 0; i < eta_grid.size(); ++i) {
    if (!(eta_grid[i] > 0.0)) throw ConfigError("hyperparams: eta grid entries must be positive");
    if (i > 0 && !(eta_grid[i] > eta_grid[i - 1]))
      throw ConfigError("hyperparams: eta grid must be strictly increasing");
  }
  if (kappa0_grid.empty()) throw ConfigError("hyperparams: kappa0 grid is empty");
  for (double k : kappa0_grid)
    if (!(k > 0.0)) throw ConfigError("hyperparams: kappa0 grid entries must be positive");
}

Eigen::VectorXd omega_diagonal(const Eigen::VectorXd& g, const HyperParams& hp) {
  return ((1.0 - g.array()) / hp.kappa0 + g.array() / hp.kappa1).matrix();
}

Eigen::VectorXd expected_log_alpha(const Eigen::VectorXd& g, const HyperParams& hp) {
  return ((1.0 - g.array()) * std::log(hp.kappa0) + g.array() * std::log(hp.kappa1)).matrix();
}

Eigen::VectorXd e_step(const EcmState& state, const HyperParams& hp) {
  const double base_var = state.rho2 * state.tau2;
  const double log_theta = std::log(state.theta);
  const double log_1m_theta = std::log1p(-state.theta);
  Eigen::VectorXd g(state.beta.size());
  for (Eigen::Index j = 0; j < state.beta.size(); ++j) {
    const double b2 = state.beta(j) * state.beta(j);
    // log theta * N(beta_j; 0, kappa1 rho2 tau2) vs the spike counterpart;
    // the shared -log(2 pi rho2 tau2)/2 cancels in the difference.
    const double l1 = log_theta - 0.5 * std::log(hp.kappa1) - 0.5 * b2 / (hp.kappa1 * base_var);
    const double l0 = log_1m_theta - 0.5 * std::log(hp.kappa0) - 0.5 * b2 / (hp.kappa0 * base_var);
    g(j) = 1.0 / (1.0 + std::exp(l0 - l1));
  }
  return g;
}

void cm_update_beta(EcmState& state, const Dataset& d, const HyperParams& hp) {
  const Eigen::VectorXd omega = omega_diagonal(state.g, hp);
  const Eigen::ArrayXd inv_sigma2 = state.sigma2.array().inverse();
  // A = X' Sigma^{-1} X + Omega / tau2, SPD by construction.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d.p(), d.p());
  a.selfadjointView<Eigen::Lower>().rankUpdate(
      (d.x.array().colwise() * inv_sigma2.sqrt()).matrix().transpose());
  a += (omega / state.tau2).asDiagonal();
  const Eigen::VectorXd rhs = d.x.transpose() * (d.y.array() * inv_sigma2).matrix();
  const Eigen::LLT<Eigen::MatrixXd> llt(a.selfadjointView<Eigen::Lower>());
  if (llt.info() != Eigen::Success)
    throw NumericError("ecm: SPD solve for beta failed; data or state is non-finite");
  state.beta = llt.solve(rhs);
}

void cm_update_rho2(EcmState& state, const Dataset& d, const HyperParams& hp) {
  const Eigen::VectorXd omega = omega_diagonal(state.g, hp);
  const Eigen::VectorXd resid = d.y - d.x * state.beta;
  const double rss = (resid.array().square() / state.sigma2.array()).sum();
  const double penalty = state.beta.dot(omega.asDiagonal() * state.beta) / state.tau2;
  state.rho2 = (2.0 * hp.b_rho + rss + penalty) /
               (static_cast<double>(d.n() + d.p()) + 2.0 * hp.a_rho + 2.0);
}

void cm_update_tau2(EcmState& state, const HyperParams& hp) {
  const Eigen::VectorXd omega = omega_diagonal(state.g, hp);
  const double penalty = state.beta.dot(omega.asDiagonal() * state.beta) / state.rho2;
  state.tau2 = (hp.lambda_tau + penalty) / (static_cast<double>(state.beta.size()) + hp.lambda_tau + 2.0);
}

void cm_update_theta(EcmState& state, const HyperParams& hp) {
  const double p = static_cast<double>(state.g.size());
  const double raw = (hp.c_theta + state.g.sum() - 1.0) / (hp.c_theta + hp.d_theta + p - 2.0);
  state.theta = std::clamp(raw, 1e-12, 1.0 - 1e-12);
}

void cm_update_sigma2(EcmState& state, const Dataset& d, const HyperParams& hp) {
  const double eta = hp.eta_fixed;
  const Eigen::VectorXd resid = d.y - d.x * state.beta;
  state.sigma2 = (0.5 / eta) *
                 ((1.0 + 4.0 * eta * (eta + resid.array().square() / state.rho2)).sqrt() - 1.0);
}

EcmState cm_step(const EcmState& state, const Dataset& d, const HyperParams& hp) {
  EcmState next = state;
  cm_update_beta(next, d, hp);
  cm_update_rho2(next, d, hp);
  cm_update_tau2(next, hp);
  cm_update_theta(next, hp);
  cm_update_sigma2(next, d, hp);
  return next;
}

double q_objective(const EcmState& state, const Dataset& d, const HyperParams& hp) {
  const double eta = hp.eta_fixed;
  const double n = static_cast<double>(d.n());
  const double p = static_cast<double>(d.p());
  const Eigen::VectorXd omega = omega_diagonal(state.g, hp);
  const Eigen::VectorXd elog_alpha = expected_log_alpha(state.g, hp);
  const Eigen::VectorXd resid = d.y - d.x * state.beta;
  const double rss = (resid.array().square() / state.sigma2.array()).sum();

  // Likelihood block. The scale-mixture prior on each sigma2_i contributes
  // log sigma2_i through its kernel jointly with the Gaussian normalizer;
  // the stationary point of this form is exactly the closed-form sigma2 update.
  double q = -0.5 * (n * std::log(state.rho2) +
                     (state.sigma2.array().log() + eta * state.sigma2.array() +
                      eta / state.sigma2.array())
                         .sum() +
                     rss / state.rho2 + 2.0 * n * log_bessel_k(1.0, eta));

  // Coefficient prior block.
  const double penalty = state.beta.dot(omega.asDiagonal() * state.beta);
  q += -0.5 * (elog_alpha.sum() + p * std::log(state.rho2) + penalty / (state.rho2 * state.tau2) +
               (p + hp.lambda_tau + 2.0) * std::log(state.tau2) + hp.lambda_tau / state.tau2);

  // Scale and inclusion-probability priors.
  q += -((hp.a_rho + 1.0) * std::log(state.rho2) + hp.b_rho / state.rho2);
  q += (p + hp.d_theta - 1.0) * std::log1p(-state.theta) + (hp.c_theta - 1.0) * std::log(state.theta) +
       std::log(state.theta / (1.0 - state.theta)) * state.g.sum();
  return q;
}

EcmFit run_ecm(const Dataset& d, const HyperParams& hp, const EcmInit& init) {
  hp.validate();
  EcmState state;
  if (init.beta) {
    if (init.beta->size() != d.p()) throw ConfigError("ecm: init beta has wrong length");
    state.beta = *init.beta;
  } else {
    // Ridge start (X'X + I)^{-1} X'Y.
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(d.p(), d.p());
    a.selfadjointView<Eigen::Lower>().rankUpdate(d.x.transpose());
    state.beta = Eigen::LLT<Eigen::MatrixXd>(a.selfadjointView<Eigen::Lower>())
                     .solve(d.x.transpose() * d.y);
  }
  state.rho2 = init.rho2;
  state.tau2 = init.tau2;
  state.theta = init.theta;
  state.sigma2 = Eigen::VectorXd::Constant(d.n(), init.sigma2);
  state.g = Eigen::VectorXd::Constant(d.p(), 0.5);

  EcmFit fit;
  double q_prev = 0.0;
  bool have_prev = false;
  for (int it = 1; it <= init.max_iter; ++it) {
    state.g = e_step(state, hp);
    state = cm_step(state, d, hp);
    state.q_value = q_objective(state, d, hp);
    fit.q_history.push_back(state.q_value);
    fit.iterations = it;
    if (have_prev && std::abs(state.q_value - q_prev) / (std::abs(q_prev) + 1.0) < init.tol) {
      fit.converged = true;
      break;
    }
    q_prev = state.q_value;
    have_prev = true;
  }

  // Final refresh of the inclusion probabilities at the modal estimates.
  state.g = e_step(state, hp);
  state.q_value = q_objective(state, d, hp);
  fit.selected.resize(d.p());
  for (Eigen::Index j = 0; j < d.p(); ++j) {
    fit.selected[j] = state.g(j) >= 0.5;
    if (fit.selected[j]) fit.reduced_indices.push_back(j);
  }
  fit.final_state = std::move(state);
  return fit;
}

}  // namespace gecm
