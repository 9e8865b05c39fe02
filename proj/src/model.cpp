#include "scail/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scail/errors.hpp"
#include "scail/rng.hpp"

namespace scail {

Activation activation_from_string(const std::string& s) {
    if (s == "relu") return Activation::Relu;
    if (s == "tanh") return Activation::Tanh;
    throw ConfigError("unknown activation '" + s + "' (expected relu or tanh)");
}

std::string to_string(Activation a) {
    return a == Activation::Relu ? "relu" : "tanh";
}

void NetworkConfig::validate() const {
    if (input_dim <= 0) throw ConfigError("network: input_dim must be positive");
    for (int h : hidden_dims) {
        if (h <= 0) throw ConfigError("network: hidden widths must be positive");
    }
}

void Model::validate() const {
    config.validate();
    int in = config.input_dim;
    if (layers.size() != config.hidden_dims.size()) {
        throw ShapeError("model: layer count does not match config");
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
        if (layers[l].weight.rows() != config.hidden_dims[l] || layers[l].weight.cols() != in ||
            layers[l].bias.size() != config.hidden_dims[l]) {
            throw ShapeError("model: layer " + std::to_string(l) + " has wrong shape");
        }
        if (!layers[l].weight.allFinite() || !layers[l].bias.allFinite()) {
            throw InputError("model: layer " + std::to_string(l) + " has non-finite parameters");
        }
        in = config.hidden_dims[l];
    }
    if (classifier.cols() != config.feature_dim()) {
        throw ShapeError("model: classifier width does not match feature dim");
    }
    if (!classifier.allFinite()) throw InputError("model: classifier has non-finite weights");
}

namespace {

void init_classifier_rows(ClassifierMatrix& classifier, int first_row, Rng& rng) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(classifier.cols()));
    for (int r = first_row; r < classifier.rows(); ++r) {
        for (int c = 0; c < classifier.cols(); ++c) classifier(r, c) = rng.uniform_sym(bound);
    }
}

}  // namespace

Model make_model(const NetworkConfig& config, int initial_classes) {
    config.validate();
    if (initial_classes <= 0) throw InputError("make_model: need at least one class");

    Model model;
    model.config = config;
    Rng rng(config.seed);
    int in = config.input_dim;
    for (int out : config.hidden_dims) {
        DenseLayer layer;
        layer.weight.resize(out, in);
        const double std_dev = std::sqrt(2.0 / static_cast<double>(in));
        for (int r = 0; r < out; ++r) {
            for (int c = 0; c < in; ++c) layer.weight(r, c) = std_dev * rng.normal();
        }
        layer.bias = Eigen::VectorXd::Zero(out);
        model.layers.push_back(std::move(layer));
        in = out;
    }
    model.classifier.resize(initial_classes, config.feature_dim());
    init_classifier_rows(model.classifier, 0, rng);
    return model;
}

Model extend_classifier(Model model, int new_class_count) {
    if (new_class_count < 1) throw InputError("extend_classifier: new class count must be >= 1");
    const int old_count = model.class_count();
    ClassifierMatrix grown(old_count + new_class_count, model.feature_dim());
    grown.topRows(old_count) = model.classifier;
    model.classifier = std::move(grown);
    Rng rng(mix_seed(model.config.seed, 0x657874ULL + static_cast<std::uint64_t>(old_count)));
    init_classifier_rows(model.classifier, old_count, rng);
    return model;
}

ForwardResult forward(const Model& model, const Eigen::MatrixXd& batch) {
    if (batch.cols() != model.config.input_dim) {
        throw ShapeError("forward: batch has " + std::to_string(batch.cols()) +
                         " columns, expected " + std::to_string(model.config.input_dim));
    }
    Eigen::MatrixXd a = batch;
    for (const DenseLayer& layer : model.layers) {
        Eigen::MatrixXd z = a * layer.weight.transpose();
        z.rowwise() += layer.bias.transpose();
        if (model.config.activation == Activation::Relu) {
            a = z.cwiseMax(0.0);
        } else {
            a = z.array().tanh().matrix();
        }
    }
    ForwardResult result;
    result.scores = a * model.classifier.transpose();
    result.features = std::move(a);
    return result;
}

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& scores) {
    Eigen::MatrixXd probs(scores.rows(), scores.cols());
    for (int i = 0; i < scores.rows(); ++i) {
        const double m = scores.row(i).maxCoeff();
        Eigen::ArrayXd e = (scores.row(i).array() - m).exp();
        probs.row(i) = (e / e.sum()).matrix();
    }
    return probs;
}

double cross_entropy_loss(const Eigen::MatrixXd& scores, const std::vector<int>& labels) {
    if (static_cast<int>(labels.size()) != scores.rows()) {
        throw ShapeError("cross_entropy_loss: label count does not match batch");
    }
    double total = 0.0;
    for (int i = 0; i < scores.rows(); ++i) {
        const int y = labels[i];
        if (y < 0 || y >= scores.cols()) {
            throw InputError("cross_entropy_loss: label " + std::to_string(y) + " out of range");
        }
        const double m = scores.row(i).maxCoeff();
        const double lse = m + std::log((scores.row(i).array() - m).exp().sum());
        total += lse - scores(i, y);
    }
    return total / static_cast<double>(scores.rows());
}

double distillation_loss(const Eigen::MatrixXd& current_scores,
                         const Eigen::MatrixXd& teacher_scores, double temperature) {
    if (current_scores.rows() != teacher_scores.rows() ||
        current_scores.cols() != teacher_scores.cols()) {
        throw ShapeError("distillation_loss: score matrices have different shapes");
    }
    if (temperature <= 0.0) throw InputError("distillation_loss: temperature must be positive");
    const Eigen::MatrixXd p = softmax_rows(teacher_scores / temperature);
    double total = 0.0;
    for (int i = 0; i < current_scores.rows(); ++i) {
        const Eigen::ArrayXd s = current_scores.row(i).array() / temperature;
        const double m = s.maxCoeff();
        const double lse = m + std::log((s - m).exp().sum());
        // -sum_j p_j * log q_j with log q = s - lse
        total -= (p.row(i).array() * (s - lse)).sum();
    }
    return total / static_cast<double>(current_scores.rows());
}

void TrainSchedule::validate() const {
    if (epochs <= 0) throw ConfigError("schedule: epochs must be positive");
    if (base_lr <= 0.0) throw ConfigError("schedule: base_lr must be positive");
    if (state_index < 0) throw ConfigError("schedule: state index must be >= 0");
    if (plateau_patience <= 0) throw ConfigError("schedule: plateau_patience must be positive");
    if (plateau_factor <= 0.0 || plateau_factor >= 1.0) {
        throw ConfigError("schedule: plateau_factor must be in (0,1)");
    }
    if (batch_size <= 0) throw ConfigError("schedule: batch_size must be positive");
}

namespace {

struct ForwardTrace {
    std::vector<Eigen::MatrixXd> activations;  // a_0 = input, ..., a_H = features
    Eigen::MatrixXd scores;
};

ForwardTrace forward_trace(const Model& model, const Eigen::MatrixXd& batch) {
    ForwardTrace trace;
    trace.activations.reserve(model.layers.size() + 1);
    trace.activations.push_back(batch);
    for (const DenseLayer& layer : model.layers) {
        Eigen::MatrixXd z = trace.activations.back() * layer.weight.transpose();
        z.rowwise() += layer.bias.transpose();
        if (model.config.activation == Activation::Relu) {
            trace.activations.push_back(z.cwiseMax(0.0));
        } else {
            trace.activations.push_back(z.array().tanh().matrix());
        }
    }
    trace.scores = trace.activations.back() * model.classifier.transpose();
    return trace;
}

}  // namespace

double loss_and_gradients(const Model& model, const Eigen::MatrixXd& batch,
                          const std::vector<int>& labels, const TrainOptions& options,
                          Gradients* grads) {
    const int n = static_cast<int>(batch.rows());
    if (n == 0) throw InputError("loss_and_gradients: empty batch");
    if (static_cast<int>(labels.size()) != n) {
        throw ShapeError("loss_and_gradients: label count does not match batch");
    }
    const ForwardTrace trace = forward_trace(model, batch);
    const int classes = model.class_count();
    for (int y : labels) {
        if (y < 0 || y >= classes) {
            throw InputError("loss_and_gradients: label " + std::to_string(y) + " out of range");
        }
    }

    const bool distill = options.teacher != nullptr && options.lambda > 0.0;
    const double lambda = options.teacher != nullptr ? options.lambda : 0.0;

    double loss = (1.0 - lambda) * cross_entropy_loss(trace.scores, labels);

    // d(total)/d(scores)
    Eigen::MatrixXd dscores = softmax_rows(trace.scores);
    for (int i = 0; i < n; ++i) dscores(i, labels[i]) -= 1.0;
    dscores *= (1.0 - lambda) / static_cast<double>(n);

    if (distill) {
        const Model& teacher = *options.teacher;
        const int old_classes = teacher.class_count();
        if (old_classes > classes) {
            throw ShapeError("loss_and_gradients: teacher covers more classes than the model");
        }
        const Eigen::MatrixXd teacher_scores = forward(teacher, batch).scores;
        const Eigen::MatrixXd current_old = trace.scores.leftCols(old_classes);
        loss += lambda * distillation_loss(current_old, teacher_scores, options.temperature);

        const Eigen::MatrixXd p = softmax_rows(teacher_scores / options.temperature);
        const Eigen::MatrixXd q = softmax_rows(current_old / options.temperature);
        dscores.leftCols(old_classes) +=
            (lambda / (options.temperature * static_cast<double>(n))) * (q - p);
    }

    if (grads) {
        grads->classifier = dscores.transpose() * trace.activations.back();
        grads->layers.resize(model.layers.size());
        Eigen::MatrixXd da = dscores * model.classifier;  // d(loss)/d(features)
        for (int l = static_cast<int>(model.layers.size()) - 1; l >= 0; --l) {
            const Eigen::MatrixXd& a = trace.activations[l + 1];
            Eigen::MatrixXd dz;
            if (model.config.activation == Activation::Relu) {
                dz = (a.array() > 0.0).cast<double>() * da.array();
            } else {
                dz = (1.0 - a.array().square()) * da.array();
            }
            grads->layers[l].weight = dz.transpose() * trace.activations[l];
            grads->layers[l].bias = dz.colwise().sum().transpose();
            if (l > 0) da = dz * model.layers[l].weight;
        }
    }
    return loss;
}

Model train_state(Model model, const Eigen::MatrixXd& samples,
                  const std::vector<int>& labels, const TrainSchedule& schedule,
                  const TrainOptions& options) {
    schedule.validate();
    const int n = static_cast<int>(samples.rows());
    if (n == 0) throw InputError("train_state: empty training set");
    if (static_cast<int>(labels.size()) != n) {
        throw ShapeError("train_state: label count does not match samples");
    }

    Rng shuffle_rng(options.shuffle_seed);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    double lr = schedule.initial_lr();
    double best_loss = std::numeric_limits<double>::infinity();
    int stale_epochs = 0;
    constexpr double kImprovementThreshold = 1e-4;

    Gradients grads;
    Eigen::MatrixXd batch;
    std::vector<int> batch_labels;

    for (int epoch = 0; epoch < schedule.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        double epoch_loss = 0.0;
        for (int start = 0; start < n; start += schedule.batch_size) {
            const int size = std::min(schedule.batch_size, n - start);
            batch.resize(size, samples.cols());
            batch_labels.resize(size);
            for (int i = 0; i < size; ++i) {
                batch.row(i) = samples.row(order[start + i]);
                batch_labels[i] = labels[order[start + i]];
            }
            const double batch_loss = loss_and_gradients(model, batch, batch_labels, options, &grads);
            epoch_loss += batch_loss * size;

            for (std::size_t l = 0; l < model.layers.size(); ++l) {
                model.layers[l].weight -= lr * grads.layers[l].weight;
                model.layers[l].bias -= lr * grads.layers[l].bias;
            }
            model.classifier -= lr * grads.classifier;
        }
        epoch_loss /= static_cast<double>(n);

        if (epoch_loss < best_loss - kImprovementThreshold) {
            best_loss = epoch_loss;
            stale_epochs = 0;
        } else {
            if (++stale_epochs >= schedule.plateau_patience) {
                lr *= schedule.plateau_factor;
                stale_epochs = 0;
            }
        }
    }
    model.state_index = schedule.state_index;
    return model;
}

}  // namespace scail
