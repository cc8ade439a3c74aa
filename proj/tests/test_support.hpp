#pragma once

#include "nlssc/types.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace nlssc::testing {

inline Matrix random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
    return m;
}

inline Matrix random_symmetric(Index n, std::mt19937_64& rng) {
    const Matrix m = random_matrix(n, n, rng);
    return 0.5 * (m + m.transpose());
}

inline Matrix random_psd(Index n, std::mt19937_64& rng) {
    const Matrix m = random_matrix(n, n, rng);
    return m * m.transpose();
}

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// Fresh per-test scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("nlssc_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace nlssc::testing
