#include "scail/memory.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "scail/errors.hpp"
#include "scail/rng.hpp"

namespace scail {

SelectionPolicy selection_from_string(const std::string& s) {
    if (s == "random") return SelectionPolicy::Random;
    if (s == "herding") return SelectionPolicy::Herding;
    throw ConfigError("unknown selection policy '" + s + "' (expected random or herding)");
}

std::string to_string(SelectionPolicy p) {
    return p == SelectionPolicy::Random ? "random" : "herding";
}

int ExemplarMemory::total() const {
    int n = 0;
    for (const auto& c : per_class) n += static_cast<int>(c.size());
    return n;
}

std::vector<int> herding_select(const Eigen::MatrixXd& features, int quota) {
    const int m = static_cast<int>(features.rows());
    if (quota < 1 || quota > m) {
        throw InputError("herding_select: quota " + std::to_string(quota) +
                         " outside [1, " + std::to_string(m) + "]");
    }
    const Eigen::VectorXd mean = features.colwise().mean();

    std::vector<int> selected;
    selected.reserve(quota);
    std::vector<bool> used(m, false);
    Eigen::VectorXd running_sum = Eigen::VectorXd::Zero(features.cols());
    for (int step = 1; step <= quota; ++step) {
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (int c = 0; c < m; ++c) {
            if (used[c]) continue;
            const Eigen::VectorXd candidate_mean =
                (running_sum + features.row(c).transpose()) / static_cast<double>(step);
            const double dist = (mean - candidate_mean).squaredNorm();
            if (dist < best_dist) {
                best_dist = dist;
                best = c;
            }
        }
        used[best] = true;
        selected.push_back(best);
        running_sum += features.row(best).transpose();
    }
    return selected;
}

std::vector<int> random_select(int population, int quota, std::uint64_t seed) {
    if (quota < 1 || quota > population) {
        throw InputError("random_select: quota outside [1, population]");
    }
    std::vector<int> order(population);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);
    order.resize(quota);
    return order;
}

std::vector<int> quotas_for(int capacity, int num_classes) {
    if (capacity < 0) throw InputError("quotas_for: capacity must be >= 0");
    if (num_classes <= 0) throw InputError("quotas_for: need at least one class");
    std::vector<int> quotas(num_classes, capacity / num_classes);
    const int remainder = capacity % num_classes;
    for (int j = 0; j < remainder; ++j) quotas[j]++;
    return quotas;
}

ExemplarMemory rebalance_memory(const ExemplarMemory& memory,
                                const std::vector<std::vector<ExemplarEntry>>& new_class_exemplars,
                                int num_classes_now, int capacity) {
    const int previous = memory.class_count();
    const int added = static_cast<int>(new_class_exemplars.size());
    if (previous + added != num_classes_now) {
        throw ConsistencyError("rebalance_memory: class counts do not add up");
    }
    const std::vector<int> quotas = quotas_for(capacity, num_classes_now);

    ExemplarMemory out;
    out.per_class.resize(num_classes_now);
    for (int j = 0; j < num_classes_now; ++j) {
        const auto& source = j < previous ? memory.per_class[j] : new_class_exemplars[j - previous];
        const int keep = std::min<int>(quotas[j], static_cast<int>(source.size()));
        out.per_class[j].assign(source.begin(), source.begin() + keep);
    }
    return out;
}

void InitClassifierStore::record_class(int class_id, int state, const Eigen::VectorXd& classifier) {
    if (class_id < 0) throw InputError("init store: negative class id");
    if (class_id < static_cast<int>(entries_.size()) && entries_[class_id].has_value()) {
        throw ConsistencyError("init store: class " + std::to_string(class_id) +
                               " already recorded");
    }
    if (class_id >= static_cast<int>(entries_.size())) entries_.resize(class_id + 1);
    entries_[class_id] = Entry{classifier, state};
}

void InitClassifierStore::record_state_stats(const RankStats& stats) {
    const int state = stats.state_index;
    if (state < 0) throw InputError("init store: negative state index");
    if (state < static_cast<int>(state_stats_.size()) && state_stats_[state].has_value()) {
        throw ConsistencyError("init store: stats for state " + std::to_string(state) +
                               " already recorded");
    }
    if (state >= static_cast<int>(state_stats_.size())) state_stats_.resize(state + 1);
    state_stats_[state] = stats;
}

bool InitClassifierStore::has_class(int class_id) const {
    return class_id >= 0 && class_id < static_cast<int>(entries_.size()) &&
           entries_[class_id].has_value();
}

const InitClassifierStore::Entry& InitClassifierStore::entry(int class_id) const {
    if (!has_class(class_id)) {
        throw ConsistencyError("init store: no entry for class " + std::to_string(class_id));
    }
    return *entries_[class_id];
}

bool InitClassifierStore::has_state_stats(int state) const {
    return state >= 0 && state < static_cast<int>(state_stats_.size()) &&
           state_stats_[state].has_value();
}

const RankStats& InitClassifierStore::state_stats(int state) const {
    if (!has_state_stats(state)) {
        throw ConsistencyError("init store: no rank stats for state " + std::to_string(state));
    }
    return *state_stats_[state];
}

}  // namespace scail
