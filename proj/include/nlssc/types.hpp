#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace nlssc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Cluster labels, values in 1..n. Only used for evaluation and diagnostics.
using LabelVector = std::vector<int>;

/// d x N data matrix; column i is sample x_i.
struct DataMatrix {
    Matrix values;

    Index dim() const { return values.rows(); }
    Index samples() const { return values.cols(); }
};

/// N x N self-expressive code. Column i holds the weights reconstructing x_i.
struct CodeMatrix {
    Matrix values;

    Index size() const { return values.cols(); }
};

}  // namespace nlssc
