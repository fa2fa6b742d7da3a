#pragma once

#include <span>

#include "gecm/rng.hpp"

namespace gecm {

// Generalized inverse Gaussian GIG(lambda, a, b) with density kernel
// x^{lambda-1} exp(-(a x + b/x)/2) and normalizer (a/b)^{lambda/2} / (2 K_lambda(sqrt(ab))).
// a = 0 is admitted for lambda < 0 (inverse gamma limit) and b = 0 for
// lambda > 0 (gamma limit); the two-sided case a, b > 0 is the usual one.
struct GigParams {
  double lambda;
  double a;
  double b;

  GigParams(double lambda_, double a_, double b_);
};

// Symmetric hyperbolic law with shape eta and scale rho2; density
// exp(-sqrt(eta (eta + eps^2/rho2))) / (2 sqrt(eta rho2) K_1(eta)).
struct HyperbolicParams {
  double eta;
  double rho2;

  HyperbolicParams(double eta_, double rho2_);
};

double gig_logpdf(double x, const GigParams& p);
double gig_sample(const GigParams& p, RngStream& rng);
// Mean sqrt(b/a) K_{lambda+1}(w)/K_lambda(w), w = sqrt(ab); two-sided case only.
double gig_mean(const GigParams& p);

double hyperbolic_logpdf(double eps, const HyperbolicParams& p);
double hyperbolic_sample(const HyperbolicParams& p, RngStream& rng);

double student_t_logpdf(double x, double df);
double student_t_sample(double df, RngStream& rng);

double normal_logpdf(double x, double mean, double var);
double normal_sample(double mean, double var, RngStream& rng);

// Gamma in shape/rate form: density rate^shape / Gamma(shape) x^{shape-1} e^{-rate x}.
double gamma_logpdf(double x, double shape, double rate);
double gamma_sample(double shape, double rate, RngStream& rng);

// Inverse gamma in shape/scale form: density scale^shape / Gamma(shape) x^{-shape-1} e^{-scale/x}.
double inv_gamma_logpdf(double x, double shape, double scale);
double inv_gamma_sample(double shape, double scale, RngStream& rng);

double beta_logpdf(double x, double c, double d);
double beta_sample(double c, double d, RngStream& rng);

// Index draw proportional to exp(log_weights), normalized by log-sum-exp.
int categorical_sample(std::span<const double> log_weights, RngStream& rng);

double log_sum_exp(std::span<const double> log_values);

}  // namespace gecm
