#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gecm/data.hpp"

namespace gecm {

// Fixed prior hyperparameters and search grids shared by both pipeline steps.
struct HyperParams {
  double kappa0 = 0.1;   // spike scale; normally chosen by cross-validation
  double kappa1 = 1.0;   // slab scale
  double lambda_tau = 1.0;
  double a_rho = 2.1;
  double b_rho = 0.1;
  double c_theta = 1.0;
  double d_theta = 1.0;
  double eta_fixed = 1.0;  // shape held fixed during the mode search
  std::vector<double> eta_grid = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7,
                                  0.8,  0.9, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
  std::vector<double> kappa0_grid = default_kappa0_grid();

  static std::vector<double> default_kappa0_grid();  // 0.01, 0.02, ..., 0.51
  void validate() const;
};

// One mode-search iterate. Omega = diag(E[1/alpha_j]) and E[log alpha_j] are
// deterministic functions of (g, kappa0, kappa1) and are always recomputed
// from g rather than stored.
struct EcmState {
  Eigen::VectorXd beta;    // p
  double rho2 = 1.0;
  double tau2 = 1.0;
  double theta = 0.5;
  Eigen::VectorXd sigma2;  // n
  Eigen::VectorXd g;       // p inclusion probabilities
  double q_value = 0.0;
};

struct EcmInit {
  std::optional<Eigen::VectorXd> beta;  // default: ridge solution (X'X + I)^{-1} X'Y
  double rho2 = 1.0;
  double tau2 = 1.0;
  double theta = 0.5;
  double sigma2 = 1.0;
  int max_iter = 500;
  double tol = 1e-6;  // relative |dQ| / (|Q| + 1)
};

struct EcmFit {
  EcmState final_state;
  int iterations = 0;
  bool converged = false;
  std::vector<bool> selected;                // g_j >= 0.5 at the final state
  std::vector<Eigen::Index> reduced_indices; // columns surviving the screen
  std::vector<double> q_history;             // q_value per iteration
};

// E[1/alpha_j] given inclusion probabilities; the diagonal of Omega.
Eigen::VectorXd omega_diagonal(const Eigen::VectorXd& g, const HyperParams& hp);
// E[log alpha_j].
Eigen::VectorXd expected_log_alpha(const Eigen::VectorXd& g, const HyperParams& hp);

// Posterior inclusion probabilities given the current scalar estimates,
// computed in log space.
Eigen::VectorXd e_step(const EcmState& state, const HyperParams& hp);

// Individual conditional-maximization updates, each using the freshest values
// already written into `state`. Exposed so stationarity can be checked per
// coordinate; cm_step composes them in the fixed order
// beta -> rho2 -> tau2 -> theta -> sigma2.
void cm_update_beta(EcmState& state, const Dataset& d, const HyperParams& hp);
void cm_update_rho2(EcmState& state, const Dataset& d, const HyperParams& hp);
void cm_update_tau2(EcmState& state, const HyperParams& hp);
void cm_update_theta(EcmState& state, const HyperParams& hp);
void cm_update_sigma2(EcmState& state, const Dataset& d, const HyperParams& hp);
EcmState cm_step(const EcmState& state, const Dataset& d, const HyperParams& hp);

// Expected complete-data log posterior (additive constants dropped).
double q_objective(const EcmState& state, const Dataset& d, const HyperParams& hp);

// Alternates e_step and cm_step until the relative change in the objective
// falls under init.tol or init.max_iter is hit; a final e_step refreshes g at
// the modal estimates before thresholding at 0.5. Expects standardized data.
EcmFit run_ecm(const Dataset& d, const HyperParams& hp, const EcmInit& init = {});

}  // namespace gecm
