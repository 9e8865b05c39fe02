#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scail/stats.hpp"

namespace scail {

enum class SelectionPolicy { Random, Herding };

SelectionPolicy selection_from_string(const std::string& s);
std::string to_string(SelectionPolicy p);

/// Bounded exemplar memory configuration; capacity 0 disables rehearsal.
struct MemoryPolicy {
    int capacity = 0;
    SelectionPolicy selection = SelectionPolicy::Random;
    std::uint64_t seed = 0;
};

struct ExemplarEntry {
    int dataset_index = 0;  // row in the training dataset
    int rank = 0;           // position in the class's selection order
};

/// Per-class exemplar lists, indexed by stream class id. Lists are stored
/// in selection order, so shrinking a class is a prefix truncation.
struct ExemplarMemory {
    std::vector<std::vector<ExemplarEntry>> per_class;

    int class_count() const { return static_cast<int>(per_class.size()); }
    int total() const;
};

/// Greedy herding order: step t picks the unselected feature row that
/// brings the running mean of the selection closest to the full class mean.
/// Ties break on the lowest index; the result is the selection order.
std::vector<int> herding_select(const Eigen::MatrixXd& features, int quota);

/// Seed-fixed selection order without replacement.
std::vector<int> random_select(int population, int quota, std::uint64_t seed);

/// Per-class quotas: floor(capacity / num_classes) each, remainder assigned
/// to the lowest class ids.
std::vector<int> quotas_for(int capacity, int num_classes);

/// Inserts the new classes' selections and prefix-truncates every class to
/// its quota under `num_classes_now`.
ExemplarMemory rebalance_memory(const ExemplarMemory& memory,
                                const std::vector<std::vector<ExemplarEntry>>& new_class_exemplars,
                                int num_classes_now, int capacity);

/// Compact store of each class's classifier as learned in its initial
/// state, plus the per-state rank statistics. Entries are written once.
class InitClassifierStore {
public:
    struct Entry {
        Eigen::VectorXd classifier;
        int initial_state = 0;
    };

    /// Records class `class_id` as first learned in `state`. Throws
    /// ConsistencyError if the class already has an entry.
    void record_class(int class_id, int state, const Eigen::VectorXd& classifier);

    /// Records the rank statistics for `state`; write-once as well.
    void record_state_stats(const RankStats& stats);

    bool has_class(int class_id) const;
    const Entry& entry(int class_id) const;
    bool has_state_stats(int state) const;
    const RankStats& state_stats(int state) const;

    int class_count() const { return static_cast<int>(entries_.size()); }
    int state_count() const { return static_cast<int>(state_stats_.size()); }

private:
    std::vector<std::optional<Entry>> entries_;       // by stream class id
    std::vector<std::optional<RankStats>> state_stats_;  // by state index
};

}  // namespace scail
