#include "gecm/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gecm/distributions.hpp"
#include "gecm/errors.hpp"

namespace gecm {

Dataset::Dataset(Eigen::VectorXd y_, Eigen::MatrixXd x_, std::vector<std::string> names)
    : y(std::move(y_)), x(std::move(x_)), column_names(std::move(names)) {
  if (y.size() != x.rows()) throw DataError("Dataset: y and x row counts differ");
  if (static_cast<Eigen::Index>(column_names.size()) != x.cols())
    throw DataError("Dataset: column name count does not match x");
  if (y.size() < 2) throw DataError("Dataset: need at least 2 rows");
  if (!y.allFinite() || !x.allFinite()) throw DataError("Dataset: non-finite entries");
}

Eigen::Index Dataset::column_index(const std::string& name) const {
  const auto it = std::find(column_names.begin(), column_names.end(), name);
  if (it == column_names.end()) throw DataError("Dataset: no column named '" + name + "'");
  return it - column_names.begin();
}

Dataset Dataset::rows(const std::vector<Eigen::Index>& idx) const {
  Eigen::VectorXd ys(idx.size());
  Eigen::MatrixXd xs(idx.size(), x.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    ys(i) = y(idx[i]);
    xs.row(i) = x.row(idx[i]);
  }
  return Dataset(std::move(ys), std::move(xs), column_names);
}

Dataset Dataset::columns(const std::vector<Eigen::Index>& idx) const {
  Eigen::MatrixXd xs(x.rows(), idx.size());
  std::vector<std::string> names(idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    xs.col(j) = x.col(idx[j]);
    names[j] = column_names[idx[j]];
  }
  return Dataset(y, std::move(xs), std::move(names));
}

Eigen::MatrixXd Standardizer::apply_x(const Eigen::MatrixXd& x_raw) const {
  if (x_raw.cols() != x_means.size()) throw DataError("Standardizer: column count mismatch");
  return (x_raw.rowwise() - x_means.transpose()).array().rowwise() /
         x_sds.transpose().array();
}

Eigen::VectorXd Standardizer::apply_y(const Eigen::VectorXd& y_raw) const {
  return (y_raw.array() - y_mean) / y_sd;
}

Eigen::VectorXd Standardizer::invert_y(const Eigen::VectorXd& y_std) const {
  return y_mean + y_sd * y_std.array();
}

namespace {

// Sample standard deviation with the n-1 divisor.
double sample_sd(const Eigen::VectorXd& v, double mean) {
  return std::sqrt((v.array() - mean).square().sum() / static_cast<double>(v.size() - 1));
}

}  // namespace

std::pair<Dataset, Standardizer> standardize(const Dataset& d) {
  Standardizer s;
  s.y_mean = d.y.mean();
  s.y_sd = sample_sd(d.y, s.y_mean);
  if (!(s.y_sd > 0.0)) throw DataError("standardize: response column is constant");
  s.x_means.resize(d.p());
  s.x_sds.resize(d.p());
  for (Eigen::Index j = 0; j < d.p(); ++j) {
    s.x_means(j) = d.x.col(j).mean();
    s.x_sds(j) = sample_sd(d.x.col(j), s.x_means(j));
    if (!(s.x_sds(j) > 0.0))
      throw DataError("standardize: column '" + d.column_names[j] + "' is constant");
  }
  Dataset out(s.apply_y(d.y), s.apply_x(d.x), d.column_names);
  return {std::move(out), std::move(s)};
}

void ScenarioConfig::validate() const {
  if (n < 2) throw ConfigError("scenario: n must be at least 2");
  if (p < 0) throw ConfigError("scenario: p must be non-negative");
  if (n_signals < 0 || n_signals > p) throw ConfigError("scenario: need 0 <= n_signals <= p");
  if (ar1 && !(ar1_phi > -1.0 && ar1_phi < 1.0))
    throw ConfigError("scenario: AR(1) phi must lie in (-1, 1)");
  switch (error_law) {
    case ErrorLaw::Hyperbolic:
      if (!(error_eta > 0.0) || !(error_rho2 > 0.0))
        throw ConfigError("scenario: hyperbolic errors need eta > 0 and rho2 > 0");
      break;
    case ErrorLaw::Normal:
      if (!(error_var > 0.0)) throw ConfigError("scenario: normal errors need var > 0");
      break;
    case ErrorLaw::StudentT:
      if (!(error_df > 0.0)) throw ConfigError("scenario: student-t errors need df > 0");
      break;
  }
}

ScenarioConfig scenario_preset(ScenarioId id) {
  ScenarioConfig cfg;
  cfg.scenario_id = id;
  cfg.n = 400;
  cfg.intercept = 2.0;
  switch (id) {
    case ScenarioId::I:
      cfg.p = 1000;
      cfg.n_signals = 100;
      cfg.signal_value = 1.5;
      cfg.ar1 = true;
      cfg.ar1_phi = 0.6;
      cfg.error_law = ErrorLaw::Hyperbolic;
      cfg.error_eta = 0.5;
      cfg.error_rho2 = 2.0;
      break;
    case ScenarioId::II:
      cfg.p = 1000;
      cfg.n_signals = 100;
      cfg.signal_value = 1.5;
      cfg.ar1 = true;
      cfg.ar1_phi = 0.6;
      cfg.error_law = ErrorLaw::Normal;
      cfg.error_var = 2.0;
      break;
    case ScenarioId::III:
      cfg.p = 1500;
      cfg.n_signals = 50;
      cfg.signal_value = 1.5;
      cfg.ar1 = false;
      cfg.error_law = ErrorLaw::StudentT;
      cfg.error_df = 2.05;
      break;
    case ScenarioId::IV:
      cfg.p = 1500;
      cfg.n_signals = 50;
      cfg.signal_value = 0.9;
      cfg.ar1 = false;
      cfg.error_law = ErrorLaw::Hyperbolic;
      cfg.error_eta = 0.5;
      cfg.error_rho2 = 2.0;
      break;
    case ScenarioId::Custom:
      break;
  }
  return cfg;
}

ScenarioId parse_scenario_id(const std::string& name) {
  if (name == "I" || name == "1") return ScenarioId::I;
  if (name == "II" || name == "2") return ScenarioId::II;
  if (name == "III" || name == "3") return ScenarioId::III;
  if (name == "IV" || name == "4") return ScenarioId::IV;
  if (name == "custom") return ScenarioId::Custom;
  throw ConfigError("unknown scenario '" + name + "' (expected I, II, III, IV or custom)");
}

std::string scenario_id_name(ScenarioId id) {
  switch (id) {
    case ScenarioId::I: return "I";
    case ScenarioId::II: return "II";
    case ScenarioId::III: return "III";
    case ScenarioId::IV: return "IV";
    case ScenarioId::Custom: return "custom";
  }
  return "custom";
}

std::pair<Dataset, TrueModel> generate_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  RngStream rng(cfg.seed, streams::kSimulate);

  Eigen::MatrixXd x(cfg.n, cfg.p);
  if (cfg.ar1) {
    const double phi = cfg.ar1_phi;
    const double innov_sd = std::sqrt(1.0 - phi * phi);
    for (Eigen::Index i = 0; i < cfg.n; ++i) {
      double prev = 0.0;
      for (Eigen::Index j = 0; j < cfg.p; ++j) {
        const double z = normal_sample(0.0, 1.0, rng);
        prev = (j == 0) ? z : phi * prev + innov_sd * z;
        x(i, j) = prev;
      }
    }
  } else {
    for (Eigen::Index i = 0; i < cfg.n; ++i)
      for (Eigen::Index j = 0; j < cfg.p; ++j) x(i, j) = normal_sample(0.0, 1.0, rng);
  }

  TrueModel truth;
  truth.beta0 = cfg.intercept;
  truth.beta = Eigen::VectorXd::Zero(cfg.p);
  truth.gamma_true.assign(cfg.p, false);
  for (Eigen::Index j = 0; j < cfg.n_signals; ++j) {
    truth.beta(j) = cfg.signal_value;
    truth.gamma_true[j] = true;
  }

  Eigen::VectorXd eps(cfg.n);
  switch (cfg.error_law) {
    case ErrorLaw::Hyperbolic: {
      const HyperbolicParams hp(cfg.error_eta, cfg.error_rho2);
      for (Eigen::Index i = 0; i < cfg.n; ++i) eps(i) = hyperbolic_sample(hp, rng);
      break;
    }
    case ErrorLaw::Normal:
      for (Eigen::Index i = 0; i < cfg.n; ++i) eps(i) = normal_sample(0.0, cfg.error_var, rng);
      break;
    case ErrorLaw::StudentT:
      for (Eigen::Index i = 0; i < cfg.n; ++i) eps(i) = student_t_sample(cfg.error_df, rng);
      break;
  }

  Eigen::VectorXd y = (x * truth.beta).array() + truth.beta0 + eps.array();
  std::vector<std::string> names(cfg.p);
  for (Eigen::Index j = 0; j < cfg.p; ++j) names[j] = "x" + std::to_string(j + 1);
  return {Dataset(std::move(y), std::move(x), std::move(names)), std::move(truth)};
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& col) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t' || *(end - 1) == '\r')) --end;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw DataError("csv: non-numeric cell at row " + std::to_string(row) + ", column \"" + col +
                    "\"");
  return value;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& response_column) {
  std::ifstream in(path);
  if (!in) throw DataError("csv: cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw DataError("csv: '" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_line(line);

  Eigen::Index response_idx = -1;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == response_column) response_idx = static_cast<Eigen::Index>(j);
  if (response_idx < 0)
    throw DataError("csv: response column \"" + response_column + "\" not found in '" + path + "'");

  std::vector<std::string> names;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (static_cast<Eigen::Index>(j) != response_idx) names.push_back(header[j]);

  std::vector<std::vector<double>> rows;
  std::size_t rowno = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++rowno;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size())
      throw DataError("csv: row " + std::to_string(rowno) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(header.size()));
    std::vector<double> vals(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) vals[j] = parse_cell(cells[j], rowno, header[j]);
    rows.push_back(std::move(vals));
  }
  if (rows.size() < 2) throw DataError("csv: '" + path + "' needs at least 2 data rows");

  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index p = static_cast<Eigen::Index>(header.size()) - 1;
  Eigen::VectorXd y(n);
  Eigen::MatrixXd x(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index jj = 0;
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (static_cast<Eigen::Index>(j) == response_idx)
        y(i) = rows[i][j];
      else
        x(i, jj++) = rows[i][j];
    }
  }
  return Dataset(std::move(y), std::move(x), std::move(names));
}

namespace {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void save_csv(const Dataset& d, const std::string& path, const std::string& response_column) {
  std::ofstream out(path);
  if (!out) throw DataError("csv: cannot write '" + path + "'");
  out << response_column;
  for (const auto& name : d.column_names) out << ',' << name;
  out << '\n';
  for (Eigen::Index i = 0; i < d.n(); ++i) {
    out << format_double(d.y(i));
    for (Eigen::Index j = 0; j < d.p(); ++j) out << ',' << format_double(d.x(i, j));
    out << '\n';
  }
  if (!out) throw DataError("csv: write to '" + path + "' failed");
}

std::pair<Dataset, Dataset> split(const Dataset& d, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction >= 0.0 && test_fraction < 1.0))
    throw ConfigError("split: test_fraction must lie in [0, 1)");
  std::vector<Eigen::Index> order(d.n());
  std::iota(order.begin(), order.end(), 0);
  RngStream rng(seed, streams::kSplit);
  for (Eigen::Index i = d.n() - 1; i > 0; --i) {
    const auto j = static_cast<Eigen::Index>(rng.uniform_below(static_cast<std::uint64_t>(i + 1)));
    std::swap(order[i], order[j]);
  }
  const auto n_test = static_cast<Eigen::Index>(
      std::llround(test_fraction * static_cast<double>(d.n())));
  std::vector<Eigen::Index> test_idx(order.begin(), order.begin() + n_test);
  std::vector<Eigen::Index> train_idx(order.begin() + n_test, order.end());
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());
  return {d.rows(train_idx), d.rows(test_idx)};
}

}  // namespace gecm
