#include "scail/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include "scail/errors.hpp"
#include "scail/rng.hpp"

namespace scail {

int LabeledDataset::class_count() const {
    int max_label = -1;
    for (int y : labels) max_label = std::max(max_label, y);
    return max_label + 1;
}

void LabeledDataset::validate() const {
    if (static_cast<int>(labels.size()) != size()) {
        throw ShapeError("dataset: label count does not match sample count");
    }
    const int c = class_count();
    std::vector<int> counts(c, 0);
    for (int y : labels) {
        if (y < 0 || y >= c) throw InputError("dataset: label out of range");
        counts[y]++;
    }
    for (int j = 0; j < c; ++j) {
        if (counts[j] == 0) {
            throw InputError("dataset: class " + std::to_string(j) + " has no samples");
        }
    }
}

DatasetPair synth_gaussians(int num_classes, int dim, int per_class_train,
                            int per_class_test, double separation,
                            std::uint64_t seed) {
    if (num_classes <= 0 || dim <= 0 || per_class_train <= 0 || per_class_test <= 0) {
        throw InputError("synth_gaussians: all counts must be positive");
    }
    if (separation < 0.0) throw InputError("synth_gaussians: separation must be >= 0");

    Rng rng(seed);
    DatasetPair out;
    out.train.samples.resize(num_classes * per_class_train, dim);
    out.test.samples.resize(num_classes * per_class_test, dim);
    out.train.labels.reserve(num_classes * per_class_train);
    out.test.labels.reserve(num_classes * per_class_test);

    Eigen::VectorXd center(dim);
    for (int c = 0; c < num_classes; ++c) {
        for (int d = 0; d < dim; ++d) center[d] = rng.normal();
        const double norm = center.norm();
        if (norm > 0.0) center *= separation / norm;

        for (int i = 0; i < per_class_train; ++i) {
            const int row = c * per_class_train + i;
            for (int d = 0; d < dim; ++d) out.train.samples(row, d) = center[d] + rng.normal();
            out.train.labels.push_back(c);
        }
        for (int i = 0; i < per_class_test; ++i) {
            const int row = c * per_class_test + i;
            for (int d = 0; d < dim; ++d) out.test.samples(row, d) = center[d] + rng.normal();
            out.test.labels.push_back(c);
        }
        out.train.class_names.push_back("class_" + std::to_string(c));
        out.test.class_names.push_back("class_" + std::to_string(c));
    }
    return out;
}

namespace {

double parse_field(const std::string& field, int line_no, const char* what) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin != end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
    while (end != begin && std::isspace(static_cast<unsigned char>(end[-1]))) --end;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || begin == end) {
        throw ParseError(line_no, "line " + std::to_string(line_no) + ": non-numeric " +
                                      what + " '" + field + "'");
    }
    return value;
}

}  // namespace

LabeledDataset load_csv(const std::string& path, bool has_header,
                        std::vector<long>* label_map) {
    std::ifstream in(path);
    if (!in) throw InputError("load_csv: cannot open '" + path + "'");

    std::vector<std::vector<double>> rows;
    std::vector<long> raw_labels;
    std::string line;
    int line_no = 0;
    int dim = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (has_header && line_no == 1) continue;
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() < 2) {
            throw ParseError(line_no, "line " + std::to_string(line_no) +
                                          ": expected `label,feat_1,...`");
        }
        const double label_value = parse_field(fields[0], line_no, "label");
        const long label = static_cast<long>(label_value);
        if (static_cast<double>(label) != label_value) {
            throw ParseError(line_no,
                             "line " + std::to_string(line_no) + ": label must be an integer");
        }
        const int row_dim = static_cast<int>(fields.size()) - 1;
        if (dim < 0) {
            dim = row_dim;
        } else if (row_dim != dim) {
            throw ParseError(line_no, "line " + std::to_string(line_no) + ": expected " +
                                          std::to_string(dim) + " features, got " +
                                          std::to_string(row_dim));
        }
        std::vector<double> feats(dim);
        for (int d = 0; d < dim; ++d) feats[d] = parse_field(fields[d + 1], line_no, "feature");
        rows.push_back(std::move(feats));
        raw_labels.push_back(label);
    }
    if (rows.empty()) throw ParseError(line_no, "empty file '" + path + "'");

    // Dense re-index in first-appearance order.
    std::unordered_map<long, int> dense;
    std::vector<long> mapping;
    LabeledDataset ds;
    ds.labels.reserve(rows.size());
    for (long raw : raw_labels) {
        auto [it, inserted] = dense.try_emplace(raw, static_cast<int>(mapping.size()));
        if (inserted) mapping.push_back(raw);
        ds.labels.push_back(it->second);
    }
    ds.samples.resize(static_cast<int>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int d = 0; d < dim; ++d) ds.samples(static_cast<int>(i), d) = rows[i][d];
    }
    for (long raw : mapping) ds.class_names.push_back(std::to_string(raw));
    if (label_map) *label_map = mapping;
    return ds;
}

int StateStream::classes_through(int k) const {
    int n = 0;
    for (int s = 0; s <= k; ++s) n += new_classes_in(s);
    return n;
}

StateStream split_stream(const LabeledDataset& train, const LabeledDataset& test,
                         int num_states, int initial_classes,
                         std::uint64_t order_seed) {
    if (num_states <= 0) throw ConfigError("split_stream: need at least one state");
    const int total = train.class_count();
    std::vector<int> sizes;
    if (num_states == 1) {
        sizes.push_back(total);
    } else {
        const int rest = total - initial_classes;
        if (initial_classes <= 0 || rest <= 0 || rest % (num_states - 1) != 0) {
            throw ConfigError("split_stream: " + std::to_string(total) + " classes cannot be split as P_0=" +
                              std::to_string(initial_classes) + " plus " +
                              std::to_string(num_states - 1) + " equal states");
        }
        sizes.push_back(initial_classes);
        for (int k = 1; k < num_states; ++k) sizes.push_back(rest / (num_states - 1));
    }
    return split_stream(train, test, sizes, order_seed);
}

StateStream split_stream(const LabeledDataset& train, const LabeledDataset& test,
                         const std::vector<int>& per_state_sizes,
                         std::uint64_t order_seed) {
    train.validate();
    const int total = train.class_count();
    if (test.class_count() > total) {
        throw ConfigError("split_stream: test set has classes unseen in training");
    }
    int sum = 0;
    for (int p : per_state_sizes) {
        if (p <= 0) throw ConfigError("split_stream: every state must introduce >= 1 class");
        sum += p;
    }
    if (sum != total) {
        throw ConfigError("split_stream: state sizes sum to " + std::to_string(sum) +
                          " but dataset has " + std::to_string(total) + " classes");
    }

    StateStream stream;
    stream.order.resize(total);
    std::iota(stream.order.begin(), stream.order.end(), 0);
    Rng rng(order_seed);
    rng.shuffle(stream.order);

    stream.stream_id_of.assign(total, -1);
    for (int sid = 0; sid < total; ++sid) stream.stream_id_of[stream.order[sid]] = sid;

    stream.state_of_class.resize(total);
    int next = 0;
    for (std::size_t k = 0; k < per_state_sizes.size(); ++k) {
        StreamState st;
        for (int i = 0; i < per_state_sizes[k]; ++i) {
            stream.state_of_class[next] = static_cast<int>(k);
            st.class_ids.push_back(stream.order[next]);
            ++next;
        }
        stream.states.push_back(std::move(st));
    }

    std::vector<int> state_of_original(total);
    for (int orig = 0; orig < total; ++orig) {
        state_of_original[orig] = stream.state_of_class[stream.stream_id_of[orig]];
    }
    for (int i = 0; i < train.size(); ++i) {
        stream.states[state_of_original[train.labels[i]]].train_indices.push_back(i);
    }
    for (int i = 0; i < test.size(); ++i) {
        stream.states[state_of_original[test.labels[i]]].test_indices.push_back(i);
    }
    return stream;
}

}  // namespace scail
