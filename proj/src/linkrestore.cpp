#include "nlssc/linkrestore.hpp"

#include "nlssc/errors.hpp"

namespace nlssc {

void RestoreConfig::validate() const {
    if (!(tau >= 0.0 && tau <= 1.0)) throw ParameterError("tau must lie in [0, 1]");
    if (repeats < 0) throw ParameterError("restore repeats must be >= 0");
}

ColumnRestore restore_column(const Vector& gamma_col, Index col_index, const GramMatrix& gram,
                             const RestoreConfig& cfg) {
    cfg.validate();
    const Matrix& k = gram.values;
    const Index n = gram.size();
    if (gamma_col.size() != n) throw DimensionError("code column length does not match Gram size");
    if (col_index < 0 || col_index >= n) throw ParameterError("column index out of range");
    if ((gamma_col.array() < 0.0).any()) throw InputError("link-restore needs a non-negative code");

    ColumnRestore out;
    out.column = gamma_col;
    out.column[col_index] = 0.0;
    Vector& g = out.column;

    std::vector<Index> candidates;
    for (int pass = 0; pass < cfg.repeats; ++pass) {
        std::vector<Index> used;
        for (Index i = 0; i < n; ++i)
            if (i != col_index && g[i] != 0.0) used.push_back(i);

        for (Index i : used) {
            const double kii = k(i, i);
            if (!(kii > 0.0))
                throw DegeneratePointError("sample " + std::to_string(i) + " has K_ii <= 0");

            // ||x_i - x_s||^2 < tau ||x_i||^2, restricted to unused s with K_is > 0.
            candidates.clear();
            double denom = kii;
            for (Index s = 0; s < n; ++s) {
                if (s == col_index || s == i || g[s] != 0.0) continue;
                const double kis = k(i, s);
                if (kis <= 0.0) continue;
                if (k(s, s) - 2.0 * kis < (cfg.tau - 1.0) * kii) {
                    candidates.push_back(s);
                    denom += kis;
                }
            }
            if (candidates.empty()) continue;
            if (!(denom > 0.0)) {
                out.skipped.push_back(i);
                continue;
            }

            const double gi = g[i] * kii / denom;
            g[i] = gi;
            for (Index s : candidates) g[s] = gi * k(i, s) / kii;
            out.links_added += static_cast<int>(candidates.size());
        }
    }
    return out;
}

RestoreResult restore_all(const CodeMatrix& gamma, const GramMatrix& gram,
                          const RestoreConfig& cfg) {
    const Index n = gamma.size();
    if (gamma.values.rows() != n || gram.size() != n)
        throw DimensionError("code matrix and Gram matrix disagree on N");

    RestoreResult out;
    out.code.values.resize(n, n);
    out.links_added.resize(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) {
        ColumnRestore col;
        try {
            col = restore_column(gamma.values.col(j), j, gram, cfg);
        } catch (const DegeneratePointError& e) {
            throw DegeneratePointError("column " + std::to_string(j) + ": " + e.what());
        } catch (const InputError& e) {
            throw InputError("column " + std::to_string(j) + ": " + e.what());
        }
        out.code.values.col(j) = col.column;
        out.links_added[j] = col.links_added;
        out.total_links_added += col.links_added;
        out.skipped += static_cast<int>(col.skipped.size());
    }
    return out;
}

}  // namespace nlssc
