#pragma once

#include "nlssc/types.hpp"

#include <cstdint>

namespace nlssc {

/// Symmetric, non-negative, zero diagonal.
struct AffinityMatrix {
    Matrix values;
};

/// A = G + G^T with the diagonal zeroed. Entries below -1e-8 are rejected.
AffinityMatrix build_affinity(const CodeMatrix& gamma);

struct KMeansConfig {
    int restarts = 10;
    int max_iters = 300;
    double tolerance = 1e-6;
};

struct KMeansResult {
    std::vector<int> assignment;  // 0-based
    Matrix centroids;             // rows
    double inertia = 0.0;
};

/// k-means++ seeded Lloyd iterations on the rows of points, best of
/// cfg.restarts by inertia (lowest restart index wins ties).
KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed, const KMeansConfig& cfg = {});

/// Row-normalized embedding from the eigenvectors of the n largest
/// eigenvalues of D^{-1/2} A D^{-1/2}. Zero-degree rows use degree 1.
Matrix spectral_embedding(const AffinityMatrix& aff, int n_clusters);

/// Labels in 1..n_clusters.
LabelVector spectral_cluster(const AffinityMatrix& aff, int n_clusters, std::uint64_t seed,
                             const KMeansConfig& cfg = {});

/// Number of nonzero off-diagonal pairs {i, j} with the same label.
long intra_cluster_edges(const AffinityMatrix& aff, const LabelVector& labels);

}  // namespace nlssc
