#include "scail/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "scail/errors.hpp"

namespace scail {

double topk_accuracy(const Eigen::MatrixXd& scores, const std::vector<int>& labels, int k) {
    const int n = static_cast<int>(scores.rows());
    const int classes = static_cast<int>(scores.cols());
    if (k < 1 || k > classes) {
        throw InputError("topk_accuracy: K=" + std::to_string(k) + " outside [1, " +
                         std::to_string(classes) + "]");
    }
    if (static_cast<int>(labels.size()) != n) {
        throw ShapeError("topk_accuracy: label count does not match scores");
    }
    long hits = 0;
    for (int i = 0; i < n; ++i) {
        const int y = labels[i];
        if (y < 0 || y >= classes) throw InputError("topk_accuracy: label out of range");
        const double target = scores(i, y);
        // Position of the true class under descending score order with
        // lowest-id tie-breaking.
        int ahead = 0;
        for (int j = 0; j < classes; ++j) {
            if (scores(i, j) > target || (scores(i, j) == target && j < y)) ++ahead;
        }
        if (ahead < k) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

AveragedAccuracy averaged_incremental_accuracy(const std::vector<double>& per_state) {
    if (per_state.empty()) throw InputError("averaged_incremental_accuracy: no states");
    AveragedAccuracy out;
    if (per_state.size() == 1) {
        out.value = per_state[0];
        out.non_incremental = true;
        return out;
    }
    double sum = 0.0;
    for (std::size_t k = 1; k < per_state.size(); ++k) sum += per_state[k];
    out.value = sum / static_cast<double>(per_state.size() - 1);
    return out;
}

double gil(const std::vector<GilConfiguration>& configurations, double acc_max) {
    if (configurations.empty()) throw InputError("gil: need at least one configuration");
    double sum = 0.0;
    for (const GilConfiguration& c : configurations) {
        if (c.full >= acc_max) {
            throw InputError("gil: full accuracy must be below the maximum");
        }
        sum += (c.acc - c.full) / (acc_max - c.full);
    }
    return sum / static_cast<double>(configurations.size());
}

Taxonomy error_taxonomy(const std::vector<int>& predictions, const std::vector<int>& labels,
                        const std::vector<bool>& is_past_class,
                        const std::vector<int>& class_initial_state) {
    if (predictions.size() != labels.size()) {
        throw ShapeError("error_taxonomy: prediction/label count mismatch");
    }
    const int classes = static_cast<int>(is_past_class.size());
    if (static_cast<int>(class_initial_state.size()) != classes) {
        throw ShapeError("error_taxonomy: class metadata size mismatch");
    }
    Taxonomy t;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int y = labels[i];
        const int p = predictions[i];
        if (y < 0 || y >= classes || p < 0 || p >= classes) {
            throw ConsistencyError("error_taxonomy: class id outside the current state");
        }
        if (is_past_class[y]) {
            if (p == y) {
                t.correct_past++;
            } else if (is_past_class[p]) {
                t.past_as_past++;
                t.past_as_past_by_state[class_initial_state[p]]++;
            } else {
                t.past_as_new++;
            }
        } else {
            if (p == y) {
                t.correct_new++;
            } else if (is_past_class[p]) {
                t.new_as_past++;
            } else {
                t.new_as_new++;
            }
        }
    }
    return t;
}

ScoreBias score_bias(const Eigen::MatrixXd& scores, const std::vector<int>& labels,
                     const std::vector<bool>& is_past_class) {
    if (static_cast<int>(labels.size()) != scores.rows()) {
        throw ShapeError("score_bias: label count does not match scores");
    }
    double past_sum = 0.0, new_sum = 0.0;
    long past_n = 0, new_n = 0;
    for (int i = 0; i < scores.rows(); ++i) {
        const int y = labels[i];
        if (y < 0 || y >= static_cast<int>(is_past_class.size())) {
            throw InputError("score_bias: label out of range");
        }
        if (is_past_class[y]) {
            past_sum += scores(i, y);
            past_n++;
        } else {
            new_sum += scores(i, y);
            new_n++;
        }
    }
    ScoreBias out;
    if (past_n > 0) out.mean_past = past_sum / static_cast<double>(past_n);
    if (new_n > 0) out.mean_new = new_sum / static_cast<double>(new_n);
    return out;
}

}  // namespace scail
