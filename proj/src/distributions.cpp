#include "gecm/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "gecm/bessel.hpp"

namespace gecm {

namespace {

constexpr double kZeroTol = 10.0 * std::numeric_limits<double>::epsilon();

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("distributions: ") + what);
}

// ---------------------------------------------------------------------------
// GIG generation, two-parameter standard form GIG(lambda, omega) with density
// proportional to x^{lambda-1} exp(-omega (x + 1/x)/2), lambda >= 0.
// Ratio-of-uniforms / table-hat algorithms of Hormann & Leydold (2014),
// "Generating generalized inverse Gaussian random variates".
// ---------------------------------------------------------------------------

double gig_mode_std(double lambda, double omega) {
  if (lambda >= 1.0)
    return (std::sqrt((lambda - 1.0) * (lambda - 1.0) + omega * omega) + (lambda - 1.0)) / omega;
  // 0 <= lambda < 1: mode of the reciprocal form, kept below one.
  return omega / (std::sqrt((1.0 - lambda) * (1.0 - lambda) + omega * omega) + (1.0 - lambda));
}

// Ratio-of-uniforms without mode shift; lambda >= 1 - 2.25 omega^2 or omega > 0.2.
double rgig_rou_noshift(double lambda, double omega, RngStream& rng) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode_std(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);
  const double ym = ((lambda + 1.0) + std::sqrt((lambda + 1.0) * (lambda + 1.0) + omega * omega)) / omega;
  const double um = std::exp(0.5 * (lambda + 1.0) * std::log(ym) - s * (ym + 1.0 / ym) - nc);

  for (;;) {
    const double u = um * rng.uniform_pos();
    const double v = rng.uniform_pos();
    const double x = u / v;
    if (std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

// Constant hat over the log-concave center plus tail hats; 0 <= lambda < 1, omega <= 1.
double rgig_table_hat(double lambda, double omega, RngStream& rng) {
  const double xm = gig_mode_std(lambda, omega);
  const double x0 = omega / (1.0 - lambda);

  double area0, area1, area2, k1 = 0.0, k2;
  const double k0 = std::exp((lambda - 1.0) * std::log(xm) - 0.5 * omega * (xm + 1.0 / xm));
  area0 = k0 * x0;
  if (x0 >= 2.0 / omega) {
    area1 = 0.0;
    k2 = std::pow(x0, lambda - 1.0);
    area2 = k2 * 2.0 * std::exp(-omega * x0 / 2.0) / omega;
  } else {
    k1 = std::exp(-omega);
    area1 = (lambda == 0.0) ? k1 * std::log(2.0 / (omega * omega))
                            : k1 / lambda * (std::pow(2.0 / omega, lambda) - std::pow(x0, lambda));
    k2 = std::pow(2.0 / omega, lambda - 1.0);
    area2 = k2 * 2.0 * std::exp(-1.0) / omega;
  }
  const double total = area0 + area1 + area2;

  for (;;) {
    double v = total * rng.uniform_pos();
    double x, hx;
    if (v <= area0) {
      x = x0 * v / area0;
      hx = k0;
    } else if ((v -= area0) <= area1) {
      if (lambda == 0.0) {
        x = omega * std::exp(std::exp(omega) * v);
        hx = k1 / x;
      } else {
        x = std::pow(std::pow(x0, lambda) + lambda / k1 * v, 1.0 / lambda);
        hx = k1 * std::pow(x, lambda - 1.0);
      }
    } else {
      v -= area1;
      const double a = std::max(x0, 2.0 / omega);
      x = -2.0 / omega * std::log(std::exp(-omega / 2.0 * a) - omega / (2.0 * k2) * v);
      hx = k2 * std::exp(-omega / 2.0 * x);
    }
    const double u = rng.uniform_pos() * hx;
    if (std::log(u) <= (lambda - 1.0) * std::log(x) - omega / 2.0 * (x + 1.0 / x)) return x;
  }
}

// Ratio-of-uniforms with shift by the mode; lambda > 2 or omega > 3.
double rgig_rou_shift(double lambda, double omega, RngStream& rng) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode_std(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);

  // Bounding rectangle from the roots of a depressed cubic (Cardano).
  const double a = -(2.0 * (lambda + 1.0) / omega + xm);
  const double b = 2.0 * (lambda - 1.0) * xm / omega - 1.0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + xm;
  const double phi = std::acos(std::clamp(-q / (2.0 * std::sqrt(-p * p * p / 27.0)), -1.0, 1.0));
  const double fak = 2.0 * std::sqrt(-p / 3.0);
  const double y1 = fak * std::cos(phi / 3.0) - a / 3.0;
  const double y2 = fak * std::cos(phi / 3.0 + 4.0 / 3.0 * M_PI) - a / 3.0;

  const double uplus = (y1 - xm) * std::exp(t * std::log(y1) - s * (y1 + 1.0 / y1) - nc);
  const double uminus = (y2 - xm) * std::exp(t * std::log(y2) - s * (y2 + 1.0 / y2) - nc);

  double x;
  double v;
  do {
    const double u = uminus + rng.uniform_pos() * (uplus - uminus);
    v = rng.uniform_pos();
    x = u / v + xm;
  } while (x <= 0.0 || std::log(v) > t * std::log(x) - s * (x + 1.0 / x) - nc);
  return x;
}

double rgig_standard(double lambda, double omega, RngStream& rng) {
  if (lambda > 2.0 || omega > 3.0) return rgig_rou_shift(lambda, omega, rng);
  if (lambda >= 1.0 - 2.25 * omega * omega || omega > 0.2) return rgig_rou_noshift(lambda, omega, rng);
  return rgig_table_hat(lambda, omega, rng);
}

}  // namespace

GigParams::GigParams(double lambda_, double a_, double b_) : lambda(lambda_), a(a_), b(b_) {
  const bool ok = std::isfinite(lambda) && std::isfinite(a) && std::isfinite(b) && a >= 0.0 &&
                  b >= 0.0 && (a > 0.0 || lambda < 0.0) && (b > 0.0 || lambda > 0.0);
  if (!ok) {
    throw std::invalid_argument("GigParams: need a,b >= 0 with a > 0 unless lambda < 0 and b > 0 unless lambda > 0 (lambda=" +
                                std::to_string(lambda_) + " a=" + std::to_string(a_) +
                                " b=" + std::to_string(b_) + ")");
  }
}

HyperbolicParams::HyperbolicParams(double eta_, double rho2_) : eta(eta_), rho2(rho2_) {
  if (!(eta > 0.0) || !(rho2 > 0.0) || !std::isfinite(eta) || !std::isfinite(rho2))
    throw std::invalid_argument("HyperbolicParams: eta and rho2 must be positive finite");
}

double gig_logpdf(double x, const GigParams& p) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("gig_logpdf: x must be positive, got " + std::to_string(x));
  double lognorm;
  if (p.a <= kZeroTol) {
    // Inverse gamma limit: InvGamma(-lambda, b/2).
    lognorm = -p.lambda * std::log(0.5 * p.b) - std::lgamma(-p.lambda);
  } else if (p.b <= kZeroTol) {
    // Gamma limit: Gamma(lambda, a/2).
    lognorm = p.lambda * std::log(0.5 * p.a) - std::lgamma(p.lambda);
  } else {
    const double w = std::sqrt(p.a * p.b);
    lognorm = 0.5 * p.lambda * std::log(p.a / p.b) - M_LN2 - log_bessel_k(p.lambda, w);
  }
  return lognorm + (p.lambda - 1.0) * std::log(x) - 0.5 * (p.a * x + p.b / x);
}

double gig_sample(const GigParams& p, RngStream& rng) {
  if (p.b <= kZeroTol) {
    return p.lambda > 0.0 ? gamma_sample(p.lambda, 0.5 * p.a, rng)
                          : 1.0 / gamma_sample(-p.lambda, 0.5 * p.a, rng);
  }
  if (p.a <= kZeroTol) {
    return p.lambda > 0.0 ? 1.0 / gamma_sample(p.lambda, 0.5 * p.b, rng)
                          : gamma_sample(-p.lambda, 0.5 * p.b, rng);
  }
  const double abslam = std::abs(p.lambda);
  const double omega = std::sqrt(p.a * p.b);
  const double alpha = std::sqrt(p.b / p.a);
  const double x = rgig_standard(abslam, omega, rng);
  // Negative lambda through the reciprocal identity 1/X ~ GIG(-lambda, b, a).
  return p.lambda < 0.0 ? alpha / x : alpha * x;
}

double gig_mean(const GigParams& p) {
  require(p.a > 0.0 && p.b > 0.0, "gig_mean needs the two-sided case");
  const double w = std::sqrt(p.a * p.b);
  return std::sqrt(p.b / p.a) * std::exp(log_bessel_k_ratio(p.lambda + 1.0, p.lambda, w));
}

double hyperbolic_logpdf(double eps, const HyperbolicParams& p) {
  require(std::isfinite(eps), "hyperbolic_logpdf: eps must be finite");
  return -M_LN2 - 0.5 * std::log(p.eta * p.rho2) - log_bessel_k(1.0, p.eta) -
         std::sqrt(p.eta * (p.eta + eps * eps / p.rho2));
}

double hyperbolic_sample(const HyperbolicParams& p, RngStream& rng) {
  const double a2 = gig_sample(GigParams(1.0, p.eta, p.eta), rng);
  return normal_sample(0.0, p.rho2 * a2, rng);
}

double student_t_logpdf(double x, double df) {
  require(df > 0.0, "student_t_logpdf: df must be positive");
  return std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) - 0.5 * std::log(df * M_PI) -
         0.5 * (df + 1.0) * std::log1p(x * x / df);
}

double student_t_sample(double df, RngStream& rng) {
  require(df > 0.0, "student_t_sample: df must be positive");
  const double z = normal_sample(0.0, 1.0, rng);
  const double v = gamma_sample(0.5 * df, 0.5, rng);  // chi-square df
  return z / std::sqrt(v / df);
}

double normal_logpdf(double x, double mean, double var) {
  require(var > 0.0, "normal_logpdf: var must be positive");
  const double r = x - mean;
  return -0.5 * (std::log(2.0 * M_PI * var) + r * r / var);
}

double normal_sample(double mean, double var, RngStream& rng) {
  require(var >= 0.0, "normal_sample: var must be non-negative");
  const double u1 = rng.uniform_pos();
  const double u2 = rng.uniform();
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  return mean + std::sqrt(var) * z;
}

double gamma_logpdf(double x, double shape, double rate) {
  require(shape > 0.0 && rate > 0.0, "gamma_logpdf: shape and rate must be positive");
  if (!(x > 0.0)) throw std::domain_error("gamma_logpdf: x must be positive");
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

double gamma_sample(double shape, double rate, RngStream& rng) {
  require(shape > 0.0 && rate > 0.0, "gamma_sample: shape and rate must be positive");
  // Marsaglia & Tsang (2000) squeeze; boost shape < 1 by one and rescale.
  double boost = 1.0;
  double k = shape;
  if (k < 1.0) {
    boost = std::pow(rng.uniform_pos(), 1.0 / k);
    k += 1.0;
  }
  const double d = k - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z, v;
    do {
      z = normal_sample(0.0, 1.0, rng);
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_pos();
    if (u < 1.0 - 0.0331 * z * z * z * z) return boost * d * v / rate;
    if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return boost * d * v / rate;
  }
}

double inv_gamma_logpdf(double x, double shape, double scale) {
  require(shape > 0.0 && scale > 0.0, "inv_gamma_logpdf: shape and scale must be positive");
  if (!(x > 0.0)) throw std::domain_error("inv_gamma_logpdf: x must be positive");
  return shape * std::log(scale) - std::lgamma(shape) - (shape + 1.0) * std::log(x) - scale / x;
}

double inv_gamma_sample(double shape, double scale, RngStream& rng) {
  return 1.0 / gamma_sample(shape, scale, rng);
}

double beta_logpdf(double x, double c, double d) {
  require(c > 0.0 && d > 0.0, "beta_logpdf: parameters must be positive");
  if (!(x > 0.0) || !(x < 1.0)) throw std::domain_error("beta_logpdf: x must lie in (0,1)");
  return (c - 1.0) * std::log(x) + (d - 1.0) * std::log1p(-x) + std::lgamma(c + d) -
         std::lgamma(c) - std::lgamma(d);
}

double beta_sample(double c, double d, RngStream& rng) {
  require(c > 0.0 && d > 0.0, "beta_sample: parameters must be positive");
  const double x = gamma_sample(c, 1.0, rng);
  const double y = gamma_sample(d, 1.0, rng);
  return x / (x + y);
}

double log_sum_exp(std::span<const double> log_values) {
  require(!log_values.empty(), "log_sum_exp: empty input");
  const double m = *std::max_element(log_values.begin(), log_values.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : log_values) s += std::exp(v - m);
  return m + std::log(s);
}

int categorical_sample(std::span<const double> log_weights, RngStream& rng) {
  require(!log_weights.empty(), "categorical_sample: empty weights");
  const double norm = log_sum_exp(log_weights);
  const double u = rng.uniform();
  double acc = 0.0;
  const int n = static_cast<int>(log_weights.size());
  for (int i = 0; i < n; ++i) {
    acc += std::exp(log_weights[i] - norm);
    if (u < acc) return i;
  }
  return n - 1;  // guard against round-off at the top end
}

}  // namespace gecm
