#include "nlssc/locality.hpp"

#include "nlssc/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace nlssc {

std::string_view to_string(NeighborMetric metric) {
    return metric == NeighborMetric::KernelDistance ? "kernel-distance" : "raw-similarity";
}

NeighborMetric parse_neighbor_metric(std::string_view name) {
    if (name == "kernel-distance" || name == "kernel-induced-distance") return NeighborMetric::KernelDistance;
    if (name == "raw-similarity") return NeighborMetric::RawSimilarity;
    throw ParameterError("unknown neighbor metric '" + std::string(name) + "'");
}

NeighborSets neighbor_sets(const GramMatrix& gram, int k, NeighborMetric metric) {
    const Index n = gram.size();
    if (k < 1 || k > n - 1)
        throw ParameterError("k must satisfy 1 <= k <= N-1 (k=" + std::to_string(k) +
                             ", N=" + std::to_string(n) + ")");

    NeighborSets out;
    out.k = k;
    out.near.resize(static_cast<std::size_t>(n));
    out.far.resize(static_cast<std::size_t>(n));

    std::vector<Index> order(static_cast<std::size_t>(n - 1));
    std::vector<double> key(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        // Ascending key = nearest first.
        for (Index j = 0; j < n; ++j)
            key[j] = metric == NeighborMetric::KernelDistance ? kernel_distance_sq(gram, i, j)
                                                              : -gram.values(i, j);
        std::size_t p = 0;
        for (Index j = 0; j < n; ++j)
            if (j != i) order[p++] = j;

        auto nearer = [&](Index a, Index b) { return key[a] < key[b] || (key[a] == key[b] && a < b); };
        // Exact reverse of `nearer`, so near and far never overlap while 2k < N.
        auto farther = [&](Index a, Index b) { return nearer(b, a); };

        auto& near = out.near[i];
        auto sorted = order;
        std::partial_sort(sorted.begin(), sorted.begin() + k, sorted.end(), nearer);
        near.assign(sorted.begin(), sorted.begin() + k);

        auto& far = out.far[i];
        sorted = order;
        std::partial_sort(sorted.begin(), sorted.begin() + k, sorted.end(), farther);
        far.assign(sorted.begin(), sorted.begin() + k);
    }
    return out;
}

LocalityStructure build_locality(const NeighborSets& nbrs, bool use_far) {
    const Index n = nbrs.size();
    Matrix w = Matrix::Zero(n, n);
    Matrix b = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j : nbrs.near[i]) w(i, j) = 1.0;
        if (use_far)
            for (Index j : nbrs.far[i]) b(i, j) = 1.0;
    }

    LocalityStructure loc;
    loc.w = 0.5 * (w + w.transpose());
    loc.b = 0.5 * (b + b.transpose());
    loc.l = -loc.w;
    loc.l.diagonal() += loc.w.rowwise().sum();
    loc.l_hat = loc.l + 0.5 * loc.b;
    return loc;
}

RepresentativenessReport representativeness_order(const NeighborSets& nbrs,
                                                  const LabelVector& labels) {
    if (static_cast<Index>(labels.size()) != nbrs.size())
        throw DimensionError("label count does not match neighbor sets");
    RepresentativenessReport r;
    for (Index i = 0; i < nbrs.size(); ++i)
        for (Index j : nbrs.near[i]) (labels[i] == labels[j] ? r.correct_links : r.wrong_links)++;

    r.order = r.wrong_links == 0 ? std::numeric_limits<double>::infinity()
                                 : static_cast<double>(r.correct_links) / static_cast<double>(r.wrong_links);
    const long total = r.correct_links + r.wrong_links;
    r.wrong_fraction = total == 0 ? 0.0 : static_cast<double>(r.wrong_links) / static_cast<double>(total);
    return r;
}

}  // namespace nlssc
