#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <vector>

namespace scail {

/// Fraction of samples whose true label is among the K highest scores.
/// Score ties break toward the lowest class id.
double topk_accuracy(const Eigen::MatrixXd& scores, const std::vector<int>& labels, int k);

struct AveragedAccuracy {
    double value = 0.0;
    bool non_incremental = false;  // set when there was only the initial state
};

/// Mean accuracy over states 1..Z-1; a single-state run is reported as-is
/// with the non_incremental flag set.
AveragedAccuracy averaged_incremental_accuracy(const std::vector<double>& per_state);

struct GilConfiguration {
    double acc = 0.0;   // percent
    double full = 0.0;  // percent, the non-incremental upper bound
};

/// Mean over configurations of (acc - full) / (acc_max - full).
double gil(const std::vector<GilConfiguration>& configurations, double acc_max = 100.0);

/// Six-way split of top-1 outcomes by past/new membership of the true and
/// predicted classes, with past->past errors broken down by the state that
/// introduced the predicted class.
struct Taxonomy {
    long correct_past = 0;   // c(p)
    long past_as_past = 0;   // e(p,p)
    long past_as_new = 0;    // e(p,n)
    long correct_new = 0;    // c(n)
    long new_as_new = 0;     // e(n,n): new sample, wrong new class
    long new_as_past = 0;    // e(n,p)
    std::map<int, long> past_as_past_by_state;  // initial state of the predicted class

    long total() const {
        return correct_past + past_as_past + past_as_new + correct_new + new_as_new +
               new_as_past;
    }
};

/// `is_past_class[j]` tells whether class j predates the current state;
/// `class_initial_state[j]` is the state that introduced class j.
Taxonomy error_taxonomy(const std::vector<int>& predictions, const std::vector<int>& labels,
                        const std::vector<bool>& is_past_class,
                        const std::vector<int>& class_initial_state);

/// Mean raw score assigned to the true class, split by whether the true
/// class is past or new. An empty group yields an absent value.
struct ScoreBias {
    std::optional<double> mean_past;
    std::optional<double> mean_new;
};

ScoreBias score_bias(const Eigen::MatrixXd& scores, const std::vector<int>& labels,
                     const std::vector<bool>& is_past_class);

/// Everything recorded about one incremental state's evaluation.
struct StateEval {
    int state = 0;
    int class_count = 0;
    int test_samples = 0;
    double top1 = 0.0;
    double topk = 0.0;
    int topk_k = 1;
    ScoreBias bias;
    Taxonomy taxonomy;
};

}  // namespace scail
