#pragma once

#include "nlssc/kernels.hpp"
#include "nlssc/types.hpp"

#include <vector>

namespace nlssc {

struct RestoreConfig {
    double tau = 0.2;
    /// Number of passes over each column.
    int repeats = 1;

    void validate() const;
};

struct ColumnRestore {
    Vector column;
    int links_added = 0;
    /// Indices i skipped because sum_{s in I_bar + i} K_is <= 0.
    std::vector<Index> skipped;
};

/// Redistributes the weight of every used neighbour i of sample col_index
/// onto unused samples s close to x_i (||x_i - x_s||^2 < tau K_ii, K_is > 0).
/// Inner products come from the Gram matrix, so kernels work unchanged.
ColumnRestore restore_column(const Vector& gamma_col, Index col_index, const GramMatrix& gram,
                             const RestoreConfig& cfg);

struct RestoreResult {
    CodeMatrix code;
    std::vector<int> links_added;  // per column
    int total_links_added = 0;
    int skipped = 0;
};

RestoreResult restore_all(const CodeMatrix& gamma, const GramMatrix& gram,
                          const RestoreConfig& cfg);

}  // namespace nlssc
