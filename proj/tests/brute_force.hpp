#pragma once

#include "nlssc/types.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace nlssc::testing {

/// Clustering error by enumerating every injective relabelling of pred onto
/// truth labels (padded with "no match" slots). Exponential; n <= 6 only.
inline double brute_force_ce(const LabelVector& pred, const LabelVector& truth) {
    std::vector<int> pl(pred), tl(truth);
    std::sort(pl.begin(), pl.end());
    pl.erase(std::unique(pl.begin(), pl.end()), pl.end());
    std::sort(tl.begin(), tl.end());
    tl.erase(std::unique(tl.begin(), tl.end()), tl.end());
    const std::size_t m = std::max(pl.size(), tl.size());

    std::vector<int> targets(m);
    std::iota(targets.begin(), targets.end(), 0);  // index into tl, >= tl.size() means unmatched
    std::size_t best = 0;
    do {
        std::size_t agree = 0;
        for (std::size_t i = 0; i < pred.size(); ++i) {
            const auto p = static_cast<std::size_t>(std::lower_bound(pl.begin(), pl.end(), pred[i]) - pl.begin());
            const auto t = static_cast<std::size_t>(targets[p]);
            if (t < tl.size() && tl[t] == truth[i]) ++agree;
        }
        best = std::max(best, agree);
    } while (std::next_permutation(targets.begin(), targets.end()));
    return 1.0 - static_cast<double>(best) / static_cast<double>(pred.size());
}

}  // namespace nlssc::testing
