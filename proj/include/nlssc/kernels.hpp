#pragma once

#include "nlssc/types.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace nlssc {

enum class KernelKind { Linear, Gaussian, Hik, Precomputed };

std::string_view to_string(KernelKind kind);
KernelKind parse_kernel_kind(std::string_view name);

struct GramMatrix {
    Matrix values;
    KernelKind kind = KernelKind::Linear;
    /// Bandwidth used for the gaussian kind, 0 otherwise.
    double sigma = 0.0;

    Index size() const { return values.rows(); }
};

/// Mean of ||x_i - x_j||^2 over all pairs i != j.
/// Throws DegenerateKernelError when every sample coincides.
double gaussian_sigma(const DataMatrix& data);

/// linear:   K_ij = x_i^T x_j
/// gaussian: K_ij = exp(-||x_i - x_j||^2 / sigma), sigma from gaussian_sigma() unless given
/// hik:      K_ij = sum_m min(x_i[m], x_j[m]); features must be non-negative
GramMatrix build_gram(const DataMatrix& data, KernelKind kind,
                      std::optional<double> sigma = std::nullopt);

/// Wraps a user supplied kernel matrix after checking it is square and
/// symmetric (1e-10 relative).
GramMatrix precomputed_gram(Matrix values);

/// ||Phi(x_i) - Phi(x_j)||^2 = K_ii + K_jj - 2 K_ij, clamped at zero.
inline double kernel_distance_sq(const GramMatrix& gram, Index i, Index j) {
    const auto& k = gram.values;
    const double d = k(i, i) + k(j, j) - 2.0 * k(i, j);
    return d > 0.0 ? d : 0.0;
}

}  // namespace nlssc
