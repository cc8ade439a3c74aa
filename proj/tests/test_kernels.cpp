#include "nlssc/errors.hpp"
#include "nlssc/kernels.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace nlssc;

namespace {

DataMatrix points(std::initializer_list<std::initializer_list<double>> cols) {
    const Index n = static_cast<Index>(cols.size());
    const Index d = static_cast<Index>(cols.begin()->size());
    DataMatrix x{Matrix(d, n)};
    Index j = 0;
    for (const auto& c : cols) {
        Index i = 0;
        for (double v : c) x.values(i++, j) = v;
        ++j;
    }
    return x;
}

double min_eigenvalue_ratio(const Matrix& k) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(k, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() / std::max(1e-300, es.eigenvalues().maxCoeff());
}

}  // namespace

TEST_CASE("gaussian_sigma") {
    CHECK(gaussian_sigma(points({{0, 0}, {2, 0}})) == doctest::Approx(4.0));
    // squared distances {1, 9, 4}
    CHECK(gaussian_sigma(points({{0}, {1}, {3}})) == doctest::Approx(14.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(gaussian_sigma(points({{1, 2}, {1, 2}, {1, 2}})), DegenerateKernelError);
}

TEST_CASE("build_gram linear") {
    std::mt19937_64 rng(1);
    Eigen::HouseholderQR<Matrix> qr(testing::random_matrix(6, 4, rng));
    const DataMatrix ortho{qr.householderQ() * Matrix::Identity(6, 4)};
    const auto g = build_gram(ortho, KernelKind::Linear);
    CHECK((g.values - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

    const DataMatrix x{testing::random_matrix(5, 9, rng)};
    const auto k = build_gram(x, KernelKind::Linear);
    CHECK(k.values == k.values.transpose());
    for (Index i = 0; i < 9; ++i)
        for (Index j = 0; j < 9; ++j) {
            CHECK(k.values(i, j) == doctest::Approx(x.values.col(i).dot(x.values.col(j))).epsilon(1e-12));
            const double d2 = (x.values.col(i) - x.values.col(j)).squaredNorm();
            CHECK(std::abs(kernel_distance_sq(k, i, j) - d2) <= 1e-12 * std::max(1.0, d2));
        }
}

TEST_CASE("build_gram gaussian") {
    std::mt19937_64 rng(2);
    const DataMatrix x{testing::random_matrix(3, 8, rng)};
    const auto g = build_gram(x, KernelKind::Gaussian);
    CHECK(g.sigma == doctest::Approx(gaussian_sigma(x)));
    for (Index i = 0; i < 8; ++i) CHECK(g.values(i, i) == 1.0);
    CHECK(g.values.minCoeff() > 0.0);
    CHECK(g.values.maxCoeff() <= 1.0);
    CHECK((g.values - g.values.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    for (Index i = 1; i < 8; ++i) {
        const double d = kernel_distance_sq(g, 0, i);
        CHECK(d > 0.0);
        CHECK(d < 2.0);
    }
    CHECK(kernel_distance_sq(g, 3, 3) == 0.0);

    const auto fixed = build_gram(x, KernelKind::Gaussian, 2.0);
    CHECK(fixed.values(0, 1) == doctest::Approx(std::exp(-(x.values.col(0) - x.values.col(1)).squaredNorm() / 2.0)));
    CHECK_THROWS_AS(build_gram(x, KernelKind::Gaussian, 0.0), ParameterError);
}

TEST_CASE("build_gram hik") {
    const auto g = build_gram(points({{1, 2}, {2, 1}}), KernelKind::Hik);
    CHECK(g.values(0, 1) == 2.0);
    CHECK(g.values(0, 0) == 3.0);
    CHECK_THROWS_AS(build_gram(points({{1, -2}, {2, 1}}), KernelKind::Hik), InvalidFeatureError);
}

TEST_CASE("Gram matrices are positive semidefinite") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const DataMatrix x{testing::random_matrix(4, 20, rng)};
        const DataMatrix hist{x.values.cwiseAbs()};
        CHECK(min_eigenvalue_ratio(build_gram(x, KernelKind::Linear).values) >= -1e-8);
        CHECK(min_eigenvalue_ratio(build_gram(x, KernelKind::Gaussian).values) >= -1e-8);
        CHECK(min_eigenvalue_ratio(build_gram(hist, KernelKind::Hik).values) >= -1e-8);
    }
}

TEST_CASE("precomputed_gram") {
    Matrix k(2, 2);
    k << 1, 0.5, 0.5, 1;
    CHECK(precomputed_gram(k).kind == KernelKind::Precomputed);
    k(0, 1) = 0.4;
    CHECK_THROWS_AS(precomputed_gram(k), InputError);
    CHECK_THROWS_AS(precomputed_gram(Matrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("kernel kind names") {
    for (auto kind : {KernelKind::Linear, KernelKind::Gaussian, KernelKind::Hik, KernelKind::Precomputed})
        CHECK(parse_kernel_kind(to_string(kind)) == kind);
    CHECK_THROWS_AS(parse_kernel_kind("rbf"), ParameterError);
}
