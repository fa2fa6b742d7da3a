#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gecm/data.hpp"
#include "gecm/ecm.hpp"

namespace gecm {

struct CvPlan {
  int n_folds = 10;
  std::vector<double> kappa0_grid;      // empty: use hp.kappa0_grid
  std::vector<int> fold_assignment;     // per-row fold label; empty: derived from seed
  std::uint64_t seed = 0;
  int workers = 0;                      // <= 0: machine core count
};

struct CvReport {
  std::vector<double> kappa0_grid;
  std::vector<double> score;            // median of fold-wise medians; NaN if all folds failed
  std::vector<int> failed_folds;        // per kappa0
  double best_kappa0 = 0.0;
  int best_index = -1;
};

// Reproducible near-equal fold labels in [0, n_folds).
std::vector<int> make_fold_assignment(Eigen::Index n, int n_folds, std::uint64_t seed);

// Median absolute prediction error on the held-out rows for one
// (kappa0, fold) task: standardizes with training-fold statistics only, runs
// the mode search on the training fold, and predicts on the original scale.
double cv_fold_score(const Dataset& train, const Dataset& holdout, const HyperParams& hp,
                     const EcmInit& init = {});

// Sweeps the kappa0 grid over all folds (tasks run in parallel; the report is
// identical for any worker count). Ties break toward the smallest kappa0;
// a kappa0 whose folds all fail is marked invalid rather than aborting.
CvReport select_kappa0(const Dataset& d, const HyperParams& hp, const CvPlan& plan);

}  // namespace gecm
