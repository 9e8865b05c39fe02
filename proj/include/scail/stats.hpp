#pragma once

#include <Eigen/Dense>
#include <vector>

namespace scail {

/// Per-state rank statistics: mu[r] is the mean over the state's initial
/// classifiers of the (r+1)-th largest absolute weight. Non-increasing.
struct RankStats {
    int state_index = 0;
    int population = 0;    // number of classifier rows the means were taken over
    Eigen::VectorXd mu;    // size D, ranks 1..D stored at indices 0..D-1

    int dim() const { return static_cast<int>(mu.size()); }
};

/// Means of descending-sorted absolute weights across classifier rows.
RankStats rank_means(const Eigen::MatrixXd& classifiers, int state_index);

/// rank[h] = 1 + number of dimensions with strictly larger |w|, ties broken
/// by index ascending. A bijection onto 1..D.
std::vector<int> rank_of(const Eigen::VectorXd& row);

}  // namespace scail
