#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace scail {

/// Feature vectors with dense integer labels in [0, class_count).
struct LabeledDataset {
    Eigen::MatrixXd samples;  // n x dim
    std::vector<int> labels;  // n entries
    std::vector<std::string> class_names;  // optional, one per class

    int size() const { return static_cast<int>(samples.rows()); }
    int dim() const { return static_cast<int>(samples.cols()); }
    int class_count() const;

    /// Checks label range and that every class has at least one sample.
    void validate() const;
};

struct DatasetPair {
    LabeledDataset train;
    LabeledDataset test;
};

/// Gaussian mixture: class centers are seed-fixed random unit directions
/// scaled by `separation`, isotropic unit covariance around each center.
DatasetPair synth_gaussians(int num_classes, int dim, int per_class_train,
                            int per_class_test, double separation,
                            std::uint64_t seed);

/// Rows are `label,feat_1,...,feat_d`. Labels are re-indexed densely in
/// first-appearance order; `label_map` (optional) receives dense -> original.
LabeledDataset load_csv(const std::string& path, bool has_header,
                        std::vector<long>* label_map = nullptr);

/// One step of the class stream; class ids here are the original dataset
/// labels, ordered by the stream permutation.
struct StreamState {
    std::vector<int> class_ids;      // original labels introduced here
    std::vector<int> train_indices;  // rows of the train dataset
    std::vector<int> test_indices;   // rows of the test dataset
};

/// An ordered partition of the class set into incremental states.
///
/// The protocol works in "stream id" space: the j-th class ever introduced
/// has stream id j, so state k covers stream ids [cumulative(k-1),
/// cumulative(k)).
struct StateStream {
    std::vector<StreamState> states;
    std::vector<int> order;           // stream id -> original label
    std::vector<int> stream_id_of;    // original label -> stream id
    std::vector<int> state_of_class;  // stream id -> state that introduced it

    int state_count() const { return static_cast<int>(states.size()); }
    int class_count() const { return static_cast<int>(order.size()); }
    /// Number of classes known after state k.
    int classes_through(int k) const;
    /// Classes introduced in state k.
    int new_classes_in(int k) const {
        return static_cast<int>(states[k].class_ids.size());
    }
};

/// Equal split: P_0 = initial_classes, remaining classes divided evenly
/// over the other states. Throws ConfigError when infeasible.
StateStream split_stream(const LabeledDataset& train, const LabeledDataset& test,
                         int num_states, int initial_classes,
                         std::uint64_t order_seed);

/// Explicit per-state class counts.
StateStream split_stream(const LabeledDataset& train, const LabeledDataset& test,
                         const std::vector<int>& per_state_sizes,
                         std::uint64_t order_seed);

}  // namespace scail
