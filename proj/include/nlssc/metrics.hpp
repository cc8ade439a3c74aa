#pragma once

#include "nlssc/types.hpp"

#include <map>
#include <vector>

namespace nlssc {

struct ClusteringError {
    double ce = 0.0;
    /// predicted label -> matched true label (unmatched labels map to 0)
    std::map<int, int> matching;
};

/// Minimum-cost assignment on a square cost matrix (Hungarian method).
/// Returns row -> column.
std::vector<int> hungarian(const Matrix& cost);

/// Fraction of misclustered samples under the label matching that
/// maximizes agreement.
ClusteringError clustering_error(const LabelVector& pred, const LabelVector& truth);

/// I(pred; truth) / sqrt(H(pred) H(truth)), natural logs.
double nmi(const LabelVector& pred, const LabelVector& truth);

}  // namespace nlssc
