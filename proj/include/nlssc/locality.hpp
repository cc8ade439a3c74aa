#pragma once

#include "nlssc/kernels.hpp"
#include "nlssc/types.hpp"

#include <string_view>
#include <vector>

namespace nlssc {

enum class NeighborMetric {
    /// Rank by K_ii + K_jj - 2K_ij (Euclidean distance for the linear kernel).
    KernelDistance,
    /// Rank by the raw similarity K_ij (largest = nearest).
    RawSimilarity,
};

std::string_view to_string(NeighborMetric metric);
NeighborMetric parse_neighbor_metric(std::string_view name);

/// k-nearest and k-farthest index sets of every sample, self excluded.
/// Ties are broken by the lower index.
struct NeighborSets {
    std::vector<std::vector<Index>> near;
    std::vector<std::vector<Index>> far;
    int k = 0;

    Index size() const { return static_cast<Index>(near.size()); }
};

NeighborSets neighbor_sets(const GramMatrix& gram, int k,
                           NeighborMetric metric = NeighborMetric::KernelDistance);

struct LocalityStructure {
    Matrix w;      // (W + W^T) / 2
    Matrix b;      // (B + B^T) / 2
    Matrix l;      // diag(W 1) - W
    Matrix l_hat;  // L + B / 2
};

/// Binary near/far weights, symmetrized, plus the Laplacians. With
/// use_far = false the far matrix B is left at zero and L_hat = L.
LocalityStructure build_locality(const NeighborSets& nbrs, bool use_far = true);

struct RepresentativenessReport {
    long correct_links = 0;  // ||W_c||_0
    long wrong_links = 0;    // ||W_m||_0
    /// ||W_c||_0 / ||W_m||_0, +inf when there are no wrong links.
    double order = 0.0;
    /// ||W_m||_0 / (||W_c||_0 + ||W_m||_0)
    double wrong_fraction = 0.0;
};

/// Splits the (unsymmetrized) near-neighbor links into same-label and
/// cross-label parts. Diagnostic only; labels never reach the solver.
RepresentativenessReport representativeness_order(const NeighborSets& nbrs,
                                                  const LabelVector& labels);

}  // namespace nlssc
