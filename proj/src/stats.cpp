#include "scail/stats.hpp"

#include <algorithm>
#include <numeric>

#include "scail/errors.hpp"

namespace scail {

RankStats rank_means(const Eigen::MatrixXd& classifiers, int state_index) {
    const int rows = static_cast<int>(classifiers.rows());
    const int dim = static_cast<int>(classifiers.cols());
    if (rows < 1 || dim < 1) throw InputError("rank_means: empty classifier population");

    RankStats stats;
    stats.state_index = state_index;
    stats.population = rows;
    stats.mu = Eigen::VectorXd::Zero(dim);
    std::vector<double> magnitudes(dim);
    for (int r = 0; r < rows; ++r) {
        for (int d = 0; d < dim; ++d) magnitudes[d] = std::abs(classifiers(r, d));
        std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
        for (int d = 0; d < dim; ++d) stats.mu[d] += magnitudes[d];
    }
    stats.mu /= static_cast<double>(rows);
    return stats;
}

std::vector<int> rank_of(const Eigen::VectorXd& row) {
    const int dim = static_cast<int>(row.size());
    if (dim < 1) throw InputError("rank_of: empty row");
    std::vector<int> by_magnitude(dim);
    std::iota(by_magnitude.begin(), by_magnitude.end(), 0);
    std::stable_sort(by_magnitude.begin(), by_magnitude.end(), [&](int a, int b) {
        return std::abs(row[a]) > std::abs(row[b]);
    });
    std::vector<int> rank(dim);
    for (int pos = 0; pos < dim; ++pos) rank[by_magnitude[pos]] = pos + 1;
    return rank;
}

}  // namespace scail
