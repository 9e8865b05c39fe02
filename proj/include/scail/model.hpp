#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

namespace scail {

enum class Activation { Relu, Tanh };

Activation activation_from_string(const std::string& s);
std::string to_string(Activation a);

/// Architecture of the feature extractor plus the seeded initialization.
struct NetworkConfig {
    int input_dim = 0;
    std::vector<int> hidden_dims;  // empty -> identity extractor (linear model)
    Activation activation = Activation::Relu;
    std::uint64_t seed = 0;

    /// Width of the penultimate layer; the classifier rows have this size.
    int feature_dim() const {
        return hidden_dims.empty() ? input_dim : hidden_dims.back();
    }
    void validate() const;
};

struct DenseLayer {
    Eigen::MatrixXd weight;  // out x in
    Eigen::VectorXd bias;    // out
};

/// Classification layer: one weight row of size feature_dim per class,
/// no bias term.
using ClassifierMatrix = Eigen::MatrixXd;

struct Model {
    NetworkConfig config;
    std::vector<DenseLayer> layers;
    ClassifierMatrix classifier;  // class_count x feature_dim
    int state_index = 0;

    int class_count() const { return static_cast<int>(classifier.rows()); }
    int feature_dim() const { return config.feature_dim(); }
    void validate() const;
};

/// Builds a model with seeded initialization: Kaiming-style fan-in normal
/// weights for extractor layers (zero biases), uniform +-1/sqrt(D) rows for
/// the classifier. Equal seeds give bit-identical parameters.
Model make_model(const NetworkConfig& config, int initial_classes);

/// Appends `new_class_count` freshly initialized classifier rows. Existing
/// rows are untouched; the RNG for the new rows is derived from the model
/// seed and the pre-extension class count, so it is reproducible and does
/// not depend on training history.
Model extend_classifier(Model model, int new_class_count);

struct ForwardResult {
    Eigen::MatrixXd features;  // n x D
    Eigen::MatrixXd scores;    // n x class_count
};

ForwardResult forward(const Model& model, const Eigen::MatrixXd& batch);

/// Row-wise softmax with max-subtraction.
Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& scores);

/// Mean over the batch of -log softmax(scores)[label].
double cross_entropy_loss(const Eigen::MatrixXd& scores, const std::vector<int>& labels);

/// Cross-entropy between temperature-softened teacher and current softmax,
/// averaged over the batch. Both matrices must cover the same classes.
double distillation_loss(const Eigen::MatrixXd& current_scores,
                         const Eigen::MatrixXd& teacher_scores, double temperature);

struct TrainSchedule {
    int epochs = 1;
    double base_lr = 0.1;
    int state_index = 0;
    int plateau_patience = 5;
    double plateau_factor = 0.1;
    int batch_size = 32;

    /// Initial learning rate for this state: base_lr / (state_index + 1).
    double initial_lr() const { return base_lr / (state_index + 1); }
    void validate() const;
};

struct TrainOptions {
    const Model* teacher = nullptr;   // covers the previous state's classes
    double lambda = 0.0;              // weight of the distillation term
    double temperature = 2.0;
    std::uint64_t shuffle_seed = 0;   // shuffling stream for the whole state
};

struct Gradients {
    std::vector<DenseLayer> layers;   // same shapes as the model's layers
    Eigen::MatrixXd classifier;
};

/// Total loss (1-lambda)*CE + lambda*distill on one batch, with analytic
/// gradients for every parameter tensor when `grads` is non-null.
double loss_and_gradients(const Model& model, const Eigen::MatrixXd& batch,
                          const std::vector<int>& labels, const TrainOptions& options,
                          Gradients* grads);

/// Plain SGD over shuffled mini-batches with plateau learning-rate decay.
/// Deterministic given the schedule and options.shuffle_seed.
Model train_state(Model model, const Eigen::MatrixXd& samples,
                  const std::vector<int>& labels, const TrainSchedule& schedule,
                  const TrainOptions& options = {});

}  // namespace scail
