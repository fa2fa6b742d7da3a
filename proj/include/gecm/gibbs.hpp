#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gecm/data.hpp"
#include "gecm/ecm.hpp"
#include "gecm/rng.hpp"

namespace gecm {

// Sampler state over the reduced design (p* columns). beta_j is exactly zero
// whenever gamma_j is off.
struct GibbsState {
  std::vector<bool> gamma;  // p*
  Eigen::VectorXd beta;     // p*, zeros off-model
  Eigen::VectorXd sigma2;   // n
  double rho2 = 1.0;
  double tau2 = 1.0;
  double theta = 0.5;
  double eta = 1.0;         // element of the eta grid

  Eigen::Index model_size() const;
};

struct GibbsSchedule {
  int iters = 11000;
  int burnin = 1000;
  int thin = 1;

  int retained() const { return (iters - burnin) / thin; }
  void validate() const;
};

struct GibbsInit {
  // Defaults: full model on the reduced space, beta at its conditional mean.
  double sigma2 = 1.0;
  double rho2 = 1.0;
  double tau2 = 1.0;
  double theta = 0.5;
  double eta = 1.0;
};

// Retained chain, one row per stored iteration.
struct GibbsDraws {
  std::vector<std::string> column_names;  // reduced-design column labels
  Eigen::MatrixXd beta;                   // retained x p*
  std::vector<std::vector<bool>> gamma;   // retained x p*
  Eigen::VectorXd rho2, tau2, theta, eta; // retained
  int burnin = 0;
  int thin = 1;
  std::uint64_t seed = 0;

  Eigen::Index retained() const { return beta.rows(); }
};

// log p(Y | gamma, sigma2, rho2, tau2) with the active coefficients
// integrated out: Y ~ N(0, Sigma + rho2 tau2 X_g X_g'). Evaluated through the
// p_g x p_g system A = X_g' Sigma^{-1} X_g + I/(rho2 tau2) by symmetric
// factorization.
double log_marginal_y(const std::vector<bool>& gamma, const Eigen::VectorXd& sigma2,
                      double rho2, double tau2, const Dataset& d);

// Log acceptance ratio of flipping coordinate j: the marginal-likelihood
// difference plus the prior odds theta/(1-theta) for an addition (inverse for
// a deletion).
double flip_log_acceptance(const GibbsState& state, Eigen::Index j, const Dataset& d);

// One full sweep over the reduced coordinates in a fresh uniform random
// order, each coordinate proposed as a single flip; afterwards the active
// coefficients are redrawn jointly from N(A^{-1}b, A^{-1}).
void update_gamma_mh(GibbsState& state, const Dataset& d, RngStream& rng);

void update_sigma2(GibbsState& state, const Dataset& d, RngStream& rng);
void update_rho2(GibbsState& state, const HyperParams& hp, RngStream& rng);
void update_tau2(GibbsState& state, const HyperParams& hp, RngStream& rng);
void update_theta(GibbsState& state, const HyperParams& hp, RngStream& rng);
void update_eta(GibbsState& state, const HyperParams& hp, RngStream& rng);

// Full sampler over the reduced design: per iteration the update order is
// gamma/beta sweep -> sigma2 -> rho2 -> tau2 -> theta -> eta.
GibbsDraws run_gibbs(const Dataset& d_reduced, const HyperParams& hp, const GibbsInit& init,
                     const GibbsSchedule& schedule, RngStream rng);

}  // namespace gecm
