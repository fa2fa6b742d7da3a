#include "gecm/cv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gecm/errors.hpp"
#include "gecm/parallel.hpp"

namespace gecm {

namespace {

double median_of(std::vector<double> v) {
  const std::size_t n = v.size();
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<int> make_fold_assignment(Eigen::Index n, int n_folds, std::uint64_t seed) {
  if (n_folds < 2) throw ConfigError("cv: need at least 2 folds");
  if (n < 2 * n_folds) throw ConfigError("cv: need n >= 2 * n_folds rows");
  // Balanced labels, then a seeded shuffle; fold sizes differ by at most 1.
  std::vector<int> labels(n);
  for (Eigen::Index i = 0; i < n; ++i) labels[i] = static_cast<int>(i % n_folds);
  RngStream rng(seed, streams::kCv);
  for (Eigen::Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Eigen::Index>(rng.uniform_below(static_cast<std::uint64_t>(i + 1)));
    std::swap(labels[i], labels[j]);
  }
  return labels;
}

double cv_fold_score(const Dataset& train, const Dataset& holdout, const HyperParams& hp,
                     const EcmInit& init) {
  auto [train_std, scaler] = standardize(train);
  const EcmFit fit = run_ecm(train_std, hp, init);
  // Mode prediction on the original scale; the destandardization constant is
  // the only intercept available at this stage.
  const Eigen::VectorXd yhat =
      scaler.invert_y(scaler.apply_x(holdout.x) * fit.final_state.beta);
  std::vector<double> abs_err(holdout.n());
  for (Eigen::Index i = 0; i < holdout.n(); ++i) abs_err[i] = std::abs(holdout.y(i) - yhat(i));
  return median_of(std::move(abs_err));
}

CvReport select_kappa0(const Dataset& d, const HyperParams& hp, const CvPlan& plan) {
  CvReport report;
  report.kappa0_grid = plan.kappa0_grid.empty() ? hp.kappa0_grid : plan.kappa0_grid;
  if (report.kappa0_grid.empty()) throw ConfigError("cv: kappa0 grid is empty");

  const std::vector<int> folds = plan.fold_assignment.empty()
                                     ? make_fold_assignment(d.n(), plan.n_folds, plan.seed)
                                     : plan.fold_assignment;
  if (static_cast<Eigen::Index>(folds.size()) != d.n())
    throw ConfigError("cv: fold assignment length does not match data");
  const int n_folds = *std::max_element(folds.begin(), folds.end()) + 1;

  std::vector<std::vector<Eigen::Index>> train_rows(n_folds), test_rows(n_folds);
  for (Eigen::Index i = 0; i < d.n(); ++i) {
    for (int f = 0; f < n_folds; ++f)
      (folds[i] == f ? test_rows[f] : train_rows[f]).push_back(i);
  }
  for (int f = 0; f < n_folds; ++f)
    if (test_rows[f].empty()) throw ConfigError("cv: fold " + std::to_string(f) + " is empty");

  const std::size_t n_kappa = report.kappa0_grid.size();
  const std::size_t n_tasks = n_kappa * static_cast<std::size_t>(n_folds);
  std::vector<double> fold_scores(n_tasks, std::numeric_limits<double>::quiet_NaN());

  const int workers = plan.workers > 0 ? plan.workers : default_worker_count();
  parallel_for(workers, n_tasks, [&](std::size_t task) {
    const std::size_t ki = task / n_folds;
    const int f = static_cast<int>(task % n_folds);
    HyperParams task_hp = hp;
    task_hp.kappa0 = report.kappa0_grid[ki];
    try {
      fold_scores[task] =
          cv_fold_score(d.rows(train_rows[f]), d.rows(test_rows[f]), task_hp);
    } catch (const std::exception&) {
      // leave NaN; the kappa0 is marked invalid below
    }
  });

  report.score.assign(n_kappa, std::numeric_limits<double>::quiet_NaN());
  report.failed_folds.assign(n_kappa, 0);
  for (std::size_t ki = 0; ki < n_kappa; ++ki) {
    std::vector<double> per_fold;
    for (int f = 0; f < n_folds; ++f) {
      const double s = fold_scores[ki * n_folds + f];
      if (std::isnan(s))
        ++report.failed_folds[ki];
      else
        per_fold.push_back(s);
    }
    if (report.failed_folds[ki] == 0) report.score[ki] = median_of(std::move(per_fold));
  }

  for (std::size_t ki = 0; ki < n_kappa; ++ki) {
    const double s = report.score[ki];
    if (std::isnan(s)) continue;
    if (report.best_index < 0 || s < report.score[report.best_index]) {
      report.best_index = static_cast<int>(ki);
    }
  }
  if (report.best_index < 0) throw NumericError("cv: every kappa0 candidate failed");
  // Ties break toward the smallest kappa0 value, not the smallest index.
  for (std::size_t ki = 0; ki < n_kappa; ++ki) {
    if (!std::isnan(report.score[ki]) && report.score[ki] == report.score[report.best_index] &&
        report.kappa0_grid[ki] < report.kappa0_grid[report.best_index]) {
      report.best_index = static_cast<int>(ki);
    }
  }
  report.best_kappa0 = report.kappa0_grid[report.best_index];
  return report;
}

}  // namespace gecm
