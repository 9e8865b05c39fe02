#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "scail/memory.hpp"
#include "scail/model.hpp"
#include "scail/stats.hpp"

namespace scail {

/// A past-class classifier rescaled into the current state's weight regime.
struct ScaledClassifier {
    int class_id = -1;
    int source_state = 0;
    Eigen::VectorXd weights;
};

/// Per-rank rescaling of an initial classifier: each component is multiplied
/// by the ratio of current to initial mean magnitude at its rank. Signs are
/// preserved; zero components pass through. Throws SingularStatsError when
/// an initial mean is zero at a rank holding a nonzero weight.
ScaledClassifier scale_classifier(const Eigen::VectorXd& initial,
                                  const RankStats& stats_initial,
                                  const RankStats& stats_current, int class_id = -1);

/// A drop-in classification layer: past-class rows rewritten by some
/// rectifier, new-class rows exactly as the current model learned them.
struct RectifiedLayer {
    Eigen::MatrixXd rows;    // class_count x D
    std::string method;      // tag, e.g. "ScaIL", "FT", "FT_init"
    int past_count = 0;      // rows [0, past_count) belong to past classes
    int top_m = 10;          // score-mask width; <= 0 disables masking

    int class_count() const { return static_cast<int>(rows.rows()); }
};

/// Raw view of the model's own classifier.
RectifiedLayer raw_layer(const Model& model, int past_count);

/// Past rows scaled from their stored initial classifiers; new rows copied
/// from the model. Current-state stats are computed over the model's new
/// rows only and must already be recorded in the store.
RectifiedLayer build_scail_layer(const Model& model, const InitClassifierStore& store,
                                 int top_m = 10);

/// Past rows replaced verbatim by the stored initial classifiers; with
/// `normalize`, every row is L2-normalized afterwards.
RectifiedLayer build_init_layer(const Model& model, const InitClassifierStore& store,
                                bool normalize);

/// Divides each row by its Euclidean norm. Zero rows pass through unchanged
/// (a warning is emitted to stderr).
void l2_normalize_rows(Eigen::MatrixXd& rows);

/// features * rows^T with the layer's past-score mask applied: per sample,
/// only the top_m largest past-class scores are kept, the rest are zeroed.
/// New-class scores are untouched.
Eigen::MatrixXd masked_scores(const RectifiedLayer& layer, const Eigen::MatrixXd& features);

/// Plain features * rows^T, no masking.
Eigen::MatrixXd layer_scores(const RectifiedLayer& layer, const Eigen::MatrixXd& features);

/// Argmax over masked scores; ties go to the lowest class id.
std::vector<int> predict_masked(const RectifiedLayer& layer, const Eigen::MatrixXd& features);

/// Argmax with lowest-id tie-breaking over an arbitrary score matrix.
std::vector<int> argmax_predictions(const Eigen::MatrixXd& scores);

/// Class prototypes for the nearest-exemplars-mean classifier: past classes
/// use the mean of their exemplars' features under the current model, new
/// classes the mean over all of their training data.
struct NemPrototypes {
    Eigen::MatrixXd prototypes;  // class_count x D
};

NemPrototypes nem_prototypes(const ExemplarMemory& memory, const Model& model,
                             const Eigen::MatrixXd& train_samples,
                             const std::vector<std::vector<int>>& new_class_train_rows,
                             int first_new_class);

/// Score matrix for NEM: negated Euclidean distance to each prototype, so
/// argmax gives the nearest prototype and ties resolve to the lowest id.
Eigen::MatrixXd nem_scores(const NemPrototypes& prototypes, const Eigen::MatrixXd& features);

std::vector<int> nem_classify(const NemPrototypes& prototypes, const Eigen::MatrixXd& features);

}  // namespace scail
