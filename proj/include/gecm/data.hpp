#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gecm/rng.hpp"

namespace gecm {

// Response vector plus design matrix; immutable after construction.
struct Dataset {
  Eigen::VectorXd y;                      // n responses
  Eigen::MatrixXd x;                      // n x p covariates
  std::vector<std::string> column_names;  // p labels

  Dataset() = default;
  Dataset(Eigen::VectorXd y_, Eigen::MatrixXd x_, std::vector<std::string> names);

  Eigen::Index n() const { return y.size(); }
  Eigen::Index p() const { return x.cols(); }

  // Index of a named column; throws DataError if absent.
  Eigen::Index column_index(const std::string& name) const;

  // Copy restricted to the given rows / columns (pairing preserved).
  Dataset rows(const std::vector<Eigen::Index>& idx) const;
  Dataset columns(const std::vector<Eigen::Index>& idx) const;
};

// Centering/scaling transform with enough metadata to invert it exactly.
struct Standardizer {
  double y_mean = 0.0;
  double y_sd = 1.0;
  Eigen::VectorXd x_means;
  Eigen::VectorXd x_sds;

  // Standardize new covariate rows with the stored training statistics.
  Eigen::MatrixXd apply_x(const Eigen::MatrixXd& x_raw) const;
  Eigen::VectorXd apply_y(const Eigen::VectorXd& y_raw) const;
  Eigen::VectorXd invert_y(const Eigen::VectorXd& y_std) const;
};

// Columns are centered and scaled by their means and standard deviations
// (n-1 divisor), same for the response. Throws DataError naming the column
// if any column (or the response) is constant.
std::pair<Dataset, Standardizer> standardize(const Dataset& d);

enum class ScenarioId { I, II, III, IV, Custom };

struct Ar1Correlation {
  double phi = 0.6;
};
struct IndependentCorrelation {};

enum class ErrorLaw { Hyperbolic, Normal, StudentT };

struct ScenarioConfig {
  ScenarioId scenario_id = ScenarioId::Custom;
  Eigen::Index n = 400;
  Eigen::Index p = 1000;
  Eigen::Index n_signals = 100;
  double signal_value = 1.5;
  double intercept = 2.0;
  bool ar1 = true;          // false: independent standard normal covariates
  double ar1_phi = 0.6;
  ErrorLaw error_law = ErrorLaw::Hyperbolic;
  double error_eta = 0.5;   // hyperbolic shape
  double error_rho2 = 2.0;  // hyperbolic scale
  double error_var = 2.0;   // normal variance
  double error_df = 2.05;   // student-t degrees of freedom
  std::uint64_t seed = 0;

  void validate() const;
};

// Presets matching the four simulation designs; overrides may be applied to
// the returned config before generation (desk-scale runs shrink n/p).
ScenarioConfig scenario_preset(ScenarioId id);
ScenarioId parse_scenario_id(const std::string& name);
std::string scenario_id_name(ScenarioId id);

struct TrueModel {
  double beta0 = 0.0;
  Eigen::VectorXd beta;            // p coefficients
  std::vector<bool> gamma_true;    // gamma_true[j] == (beta[j] != 0)
};

// Draws covariates (AR(1) built by the exact recursion x_j = phi x_{j-1} +
// sqrt(1-phi^2) z_j, which realizes the phi^{|k-l|} covariance), then
// y = beta0 + x beta + eps with eps from the configured error law.
std::pair<Dataset, TrueModel> generate_scenario(const ScenarioConfig& cfg);

// Strict numeric CSV with a mandatory header row; parse failures name the
// offending 1-based data row and column.
Dataset load_csv(const std::string& path, const std::string& response_column);
void save_csv(const Dataset& d, const std::string& path,
              const std::string& response_column = "y");

// Deterministic split; first element holds ~(1 - test_fraction) of the rows.
std::pair<Dataset, Dataset> split(const Dataset& d, double test_fraction, std::uint64_t seed);

}  // namespace gecm
