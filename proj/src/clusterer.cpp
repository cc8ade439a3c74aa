#include "nlssc/clusterer.hpp"

#include "nlssc/errors.hpp"

#include <limits>
#include <random>

namespace nlssc {

AffinityMatrix build_affinity(const CodeMatrix& gamma) {
    const Matrix& g = gamma.values;
    if (g.rows() != g.cols()) throw DimensionError("code matrix must be square");
    if (g.size() > 0 && g.minCoeff() < -1e-8)
        throw InvariantViolation("affinity needs a non-negative code (min entry " +
                                 std::to_string(g.minCoeff()) + ")");
    AffinityMatrix a{(g + g.transpose()).cwiseMax(0.0)};
    a.values.diagonal().setZero();
    return a;
}

namespace {

struct Lloyd {
    const Matrix& x;
    int k;

    double assign(const Matrix& centroids, std::vector<int>& labels) const {
        double inertia = 0.0;
        for (Index i = 0; i < x.rows(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            int arg = 0;
            for (int c = 0; c < k; ++c) {
                const double d = (x.row(i) - centroids.row(c)).squaredNorm();
                if (d < best) {
                    best = d;
                    arg = c;
                }
            }
            labels[i] = arg;
            inertia += best;
        }
        return inertia;
    }

    Matrix seed_plus_plus(std::mt19937_64& rng) const {
        const Index n = x.rows();
        Matrix centroids(k, x.cols());
        std::uniform_int_distribution<Index> pick(0, n - 1);
        centroids.row(0) = x.row(pick(rng));
        Vector dist(n);
        for (Index i = 0; i < n; ++i) dist[i] = (x.row(i) - centroids.row(0)).squaredNorm();
        for (int c = 1; c < k; ++c) {
            const double total = dist.sum();
            Index chosen = 0;
            if (total > 0.0) {
                double r = std::uniform_real_distribution<double>(0.0, total)(rng);
                chosen = n - 1;
                for (Index i = 0; i < n; ++i) {
                    r -= dist[i];
                    if (r < 0.0) {
                        chosen = i;
                        break;
                    }
                }
            } else {
                chosen = pick(rng);
            }
            centroids.row(c) = x.row(chosen);
            for (Index i = 0; i < n; ++i)
                dist[i] = std::min(dist[i], (x.row(i) - centroids.row(c)).squaredNorm());
        }
        return centroids;
    }

    KMeansResult run(std::mt19937_64& rng, const KMeansConfig& cfg) const {
        KMeansResult r;
        r.centroids = seed_plus_plus(rng);
        r.assignment.assign(static_cast<std::size_t>(x.rows()), 0);
        double inertia = assign(r.centroids, r.assignment);
        for (int it = 0; it < cfg.max_iters; ++it) {
            Matrix sums = Matrix::Zero(k, x.cols());
            std::vector<Index> counts(static_cast<std::size_t>(k), 0);
            for (Index i = 0; i < x.rows(); ++i) {
                sums.row(r.assignment[i]) += x.row(i);
                ++counts[r.assignment[i]];
            }
            for (int c = 0; c < k; ++c) {
                if (counts[c] > 0) {
                    r.centroids.row(c) = sums.row(c) / static_cast<double>(counts[c]);
                } else {
                    // Empty cluster: move it to the worst-fitted sample.
                    Index worst = 0;
                    double worst_d = -1.0;
                    for (Index i = 0; i < x.rows(); ++i) {
                        const double d = (x.row(i) - r.centroids.row(r.assignment[i])).squaredNorm();
                        if (d > worst_d) {
                            worst_d = d;
                            worst = i;
                        }
                    }
                    r.centroids.row(c) = x.row(worst);
                }
            }
            const double next = assign(r.centroids, r.assignment);
            const bool done = std::abs(inertia - next) <= cfg.tolerance * std::max(inertia, 1e-300);
            inertia = next;
            if (done) break;
        }
        r.inertia = inertia;
        return r;
    }
};

}  // namespace

KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed, const KMeansConfig& cfg) {
    if (k < 1 || k > points.rows()) throw ParameterError("k-means needs 1 <= k <= number of points");
    const Lloyd lloyd{points, k};
    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < std::max(1, cfg.restarts); ++restart) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(restart)};
        std::mt19937_64 rng(seq);
        auto r = lloyd.run(rng, cfg);
        if (r.inertia < best.inertia) best = std::move(r);
    }
    return best;
}

Matrix spectral_embedding(const AffinityMatrix& aff, int n_clusters) {
    const Matrix& a = aff.values;
    const Index n = a.rows();
    if (n_clusters < 2) throw ParameterError("n_clusters must be >= 2");
    if (n_clusters > n) throw ParameterError("n_clusters exceeds the number of samples");

    Vector inv_sqrt = a.rowwise().sum();
    for (Index i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(inv_sqrt[i] > 0.0 ? inv_sqrt[i] : 1.0);
    const Matrix s = inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();

    Eigen::SelfAdjointEigenSolver<Matrix> solver(s);
    if (solver.info() != Eigen::Success) throw NumericalError("spectral eigensolver failed");
    Matrix embedding = solver.eigenvectors().rightCols(n_clusters);
    for (Index i = 0; i < n; ++i) {
        const double norm = embedding.row(i).norm();
        if (norm > 0.0) embedding.row(i) /= norm;
    }
    return embedding;
}

LabelVector spectral_cluster(const AffinityMatrix& aff, int n_clusters, std::uint64_t seed,
                             const KMeansConfig& cfg) {
    const auto km = kmeans(spectral_embedding(aff, n_clusters), n_clusters, seed, cfg);
    LabelVector labels(km.assignment.size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = km.assignment[i] + 1;
    return labels;
}

long intra_cluster_edges(const AffinityMatrix& aff, const LabelVector& labels) {
    const Matrix& a = aff.values;
    if (static_cast<Index>(labels.size()) != a.rows()) throw DimensionError("label count mismatch");
    long edges = 0;
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < j; ++i)
            if (a(i, j) > 0.0 && labels[i] == labels[j]) ++edges;
    return edges;
}

}  // namespace nlssc
