#include "scail/rectifiers.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>

#include "scail/errors.hpp"

namespace scail {

ScaledClassifier scale_classifier(const Eigen::VectorXd& initial,
                                  const RankStats& stats_initial,
                                  const RankStats& stats_current, int class_id) {
    const int dim = static_cast<int>(initial.size());
    if (stats_initial.dim() != dim || stats_current.dim() != dim) {
        throw ShapeError("scale_classifier: rank stats dimension mismatch");
    }
    const std::vector<int> rank = rank_of(initial);
    ScaledClassifier out;
    out.class_id = class_id;
    out.source_state = stats_initial.state_index;
    out.weights.resize(dim);
    for (int h = 0; h < dim; ++h) {
        const int r = rank[h] - 1;
        const double mu_initial = stats_initial.mu[r];
        if (mu_initial == 0.0) {
            if (initial[h] == 0.0) {
                out.weights[h] = 0.0;
                continue;
            }
            throw SingularStatsError(class_id, rank[h],
                                     "scale_classifier: zero initial mean at rank " +
                                         std::to_string(rank[h]) + " for class " +
                                         std::to_string(class_id));
        }
        out.weights[h] = (stats_current.mu[r] / mu_initial) * initial[h];
    }
    return out;
}

RectifiedLayer raw_layer(const Model& model, int past_count) {
    RectifiedLayer layer;
    layer.rows = model.classifier;
    layer.method = "FT";
    layer.past_count = past_count;
    layer.top_m = 0;
    return layer;
}

RectifiedLayer build_scail_layer(const Model& model, const InitClassifierStore& store,
                                 int top_m) {
    const int classes = model.class_count();
    const int current_state = model.state_index;
    if (!store.has_state_stats(current_state)) {
        throw ConsistencyError("build_scail_layer: no rank stats for current state " +
                               std::to_string(current_state));
    }
    const RankStats& stats_current = store.state_stats(current_state);

    RectifiedLayer layer;
    layer.rows.resize(classes, model.feature_dim());
    layer.method = "ScaIL";
    layer.top_m = top_m;

    int past_count = 0;
    for (int j = 0; j < classes; ++j) {
        if (!store.has_class(j)) {
            throw ConsistencyError("build_scail_layer: class " + std::to_string(j) +
                                   " missing from the init store");
        }
        const auto& entry = store.entry(j);
        if (entry.initial_state == current_state) {
            layer.rows.row(j) = model.classifier.row(j);
        } else {
            ++past_count;
            const RankStats& stats_initial = store.state_stats(entry.initial_state);
            layer.rows.row(j) =
                scale_classifier(entry.classifier, stats_initial, stats_current, j)
                    .weights.transpose();
        }
    }
    layer.past_count = past_count;
    return layer;
}

RectifiedLayer build_init_layer(const Model& model, const InitClassifierStore& store,
                                bool normalize) {
    const int classes = model.class_count();
    RectifiedLayer layer;
    layer.rows.resize(classes, model.feature_dim());
    layer.method = normalize ? "FT_init_L2" : "FT_init";
    layer.top_m = 0;

    int past_count = 0;
    for (int j = 0; j < classes; ++j) {
        if (!store.has_class(j)) {
            throw ConsistencyError("build_init_layer: class " + std::to_string(j) +
                                   " missing from the init store");
        }
        const auto& entry = store.entry(j);
        if (entry.initial_state == model.state_index) {
            layer.rows.row(j) = model.classifier.row(j);
        } else {
            ++past_count;
            layer.rows.row(j) = entry.classifier.transpose();
        }
    }
    layer.past_count = past_count;
    if (normalize) l2_normalize_rows(layer.rows);
    return layer;
}

void l2_normalize_rows(Eigen::MatrixXd& rows) {
    for (int r = 0; r < rows.rows(); ++r) {
        const double norm = rows.row(r).norm();
        if (norm == 0.0) {
            std::cerr << "warning: zero classifier row " << r << " left unnormalized\n";
            continue;
        }
        rows.row(r) /= norm;
    }
}

Eigen::MatrixXd layer_scores(const RectifiedLayer& layer, const Eigen::MatrixXd& features) {
    if (features.cols() != layer.rows.cols()) {
        throw ShapeError("layer_scores: feature width does not match layer");
    }
    return features * layer.rows.transpose();
}

Eigen::MatrixXd masked_scores(const RectifiedLayer& layer, const Eigen::MatrixXd& features) {
    Eigen::MatrixXd scores = layer_scores(layer, features);
    const int past = layer.past_count;
    if (layer.top_m <= 0 || past <= layer.top_m) return scores;  // mask is a no-op

    std::vector<int> idx(past);
    for (int i = 0; i < scores.rows(); ++i) {
        std::iota(idx.begin(), idx.end(), 0);
        std::nth_element(idx.begin(), idx.begin() + layer.top_m, idx.end(), [&](int a, int b) {
            if (scores(i, a) != scores(i, b)) return scores(i, a) > scores(i, b);
            return a < b;
        });
        for (int p = layer.top_m; p < past; ++p) scores(i, idx[p]) = 0.0;
    }
    return scores;
}

std::vector<int> argmax_predictions(const Eigen::MatrixXd& scores) {
    std::vector<int> pred(scores.rows());
    for (int i = 0; i < scores.rows(); ++i) {
        int best = 0;
        for (int j = 1; j < scores.cols(); ++j) {
            if (scores(i, j) > scores(i, best)) best = j;
        }
        pred[i] = best;
    }
    return pred;
}

std::vector<int> predict_masked(const RectifiedLayer& layer, const Eigen::MatrixXd& features) {
    return argmax_predictions(masked_scores(layer, features));
}

NemPrototypes nem_prototypes(const ExemplarMemory& memory, const Model& model,
                             const Eigen::MatrixXd& train_samples,
                             const std::vector<std::vector<int>>& new_class_train_rows,
                             int first_new_class) {
    const int classes = first_new_class + static_cast<int>(new_class_train_rows.size());
    NemPrototypes out;
    out.prototypes.resize(classes, model.feature_dim());

    auto mean_feature_of = [&](const std::vector<int>& rows, int class_id) {
        if (rows.empty()) {
            throw ConfigError("nem: class " + std::to_string(class_id) + " has no exemplars");
        }
        Eigen::MatrixXd batch(rows.size(), train_samples.cols());
        for (std::size_t i = 0; i < rows.size(); ++i) batch.row(i) = train_samples.row(rows[i]);
        const Eigen::MatrixXd feats = forward(model, batch).features;
        return Eigen::VectorXd(feats.colwise().mean());
    };

    for (int j = 0; j < first_new_class; ++j) {
        if (j >= memory.class_count()) {
            throw ConfigError("nem: class " + std::to_string(j) + " has no exemplars");
        }
        std::vector<int> rows;
        rows.reserve(memory.per_class[j].size());
        for (const ExemplarEntry& e : memory.per_class[j]) rows.push_back(e.dataset_index);
        out.prototypes.row(j) = mean_feature_of(rows, j).transpose();
    }
    for (std::size_t c = 0; c < new_class_train_rows.size(); ++c) {
        const int j = first_new_class + static_cast<int>(c);
        out.prototypes.row(j) = mean_feature_of(new_class_train_rows[c], j).transpose();
    }
    return out;
}

Eigen::MatrixXd nem_scores(const NemPrototypes& prototypes, const Eigen::MatrixXd& features) {
    if (features.cols() != prototypes.prototypes.cols()) {
        throw ShapeError("nem_scores: feature width does not match prototypes");
    }
    Eigen::MatrixXd scores(features.rows(), prototypes.prototypes.rows());
    for (int i = 0; i < features.rows(); ++i) {
        for (int j = 0; j < prototypes.prototypes.rows(); ++j) {
            scores(i, j) = -(features.row(i) - prototypes.prototypes.row(j)).norm();
        }
    }
    return scores;
}

std::vector<int> nem_classify(const NemPrototypes& prototypes, const Eigen::MatrixXd& features) {
    return argmax_predictions(nem_scores(prototypes, features));
}

}  // namespace scail
