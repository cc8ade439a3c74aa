#include "nlssc/metrics.hpp"

#include "nlssc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nlssc {

namespace {

struct Contingency {
    std::vector<int> pred_labels;   // sorted distinct
    std::vector<int> truth_labels;  // sorted distinct
    Matrix counts;                  // pred x truth
};

std::vector<int> distinct(const LabelVector& v) {
    std::vector<int> out(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Index position(const std::vector<int>& sorted, int value) {
    return std::lower_bound(sorted.begin(), sorted.end(), value) - sorted.begin();
}

Contingency contingency(const LabelVector& pred, const LabelVector& truth) {
    if (pred.size() != truth.size())
        throw DimensionError("label vectors differ in length (" + std::to_string(pred.size()) +
                             " vs " + std::to_string(truth.size()) + ")");
    if (pred.empty()) throw DimensionError("label vectors are empty");
    Contingency c{distinct(pred), distinct(truth), {}};
    c.counts = Matrix::Zero(static_cast<Index>(c.pred_labels.size()),
                            static_cast<Index>(c.truth_labels.size()));
    for (std::size_t i = 0; i < pred.size(); ++i)
        c.counts(position(c.pred_labels, pred[i]), position(c.truth_labels, truth[i])) += 1.0;
    return c;
}

double entropy(const Vector& counts, double n) {
    double h = 0.0;
    for (Index i = 0; i < counts.size(); ++i)
        if (counts[i] > 0.0) {
            const double p = counts[i] / n;
            h -= p * std::log(p);
        }
    return h;
}

}  // namespace

std::vector<int> hungarian(const Matrix& cost) {
    if (cost.rows() != cost.cols()) throw DimensionError("assignment needs a square cost matrix");
    const int n = static_cast<int>(cost.rows());
    const double inf = std::numeric_limits<double>::infinity();
    // Potentials formulation, 1-based with a virtual column 0.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> row_to_col(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) row_to_col[match[j] - 1] = j - 1;
    return row_to_col;
}

ClusteringError clustering_error(const LabelVector& pred, const LabelVector& truth) {
    const auto c = contingency(pred, truth);
    const Index m = std::max(c.counts.rows(), c.counts.cols());
    Matrix cost = Matrix::Zero(m, m);
    cost.topLeftCorner(c.counts.rows(), c.counts.cols()) = -c.counts;

    const auto assignment = hungarian(cost);
    double agreement = 0.0;
    ClusteringError out;
    for (Index r = 0; r < c.counts.rows(); ++r) {
        const Index col = assignment[r];
        const bool real = col < c.counts.cols();
        if (real) agreement += c.counts(r, col);
        out.matching[c.pred_labels[r]] = real ? c.truth_labels[col] : 0;
    }
    out.ce = 1.0 - agreement / static_cast<double>(pred.size());
    return out;
}

double nmi(const LabelVector& pred, const LabelVector& truth) {
    const auto c = contingency(pred, truth);
    const double n = static_cast<double>(pred.size());
    const Vector row = c.counts.rowwise().sum();
    const Vector col = c.counts.colwise().sum().transpose();
    const double hp = entropy(row, n);
    const double ht = entropy(col, n);
    if (hp == 0.0 && ht == 0.0) return 1.0;
    if (hp == 0.0 || ht == 0.0) return 0.0;

    double mi = 0.0;
    for (Index i = 0; i < c.counts.rows(); ++i)
        for (Index j = 0; j < c.counts.cols(); ++j) {
            const double nij = c.counts(i, j);
            if (nij > 0.0) mi += nij / n * std::log(n * nij / (row[i] * col[j]));
        }
    return std::clamp(mi / std::sqrt(hp * ht), 0.0, 1.0);
}

}  // namespace nlssc
