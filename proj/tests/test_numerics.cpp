#include "nlssc/errors.hpp"
#include "nlssc/numerics.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace nlssc;

namespace {

double residual(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& x) {
    return (a * x + x * b - c).norm() / c.norm();
}

Vector singular_values(const Matrix& m) { return Eigen::JacobiSVD<Matrix>(m).singularValues(); }

}  // namespace

TEST_CASE("sylvester_solve closed-form cases") {
    std::mt19937_64 rng(10);
    const Matrix c = testing::random_matrix(4, 4, rng);
    const Matrix id = Matrix::Identity(4, 4);
    CHECK((sylvester_solve(id, Matrix::Zero(4, 4), c) - c).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((sylvester_solve(2.0 * id, id, c) - c / 3.0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("sylvester_solve random symmetric systems") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        const Index n = 5;
        const Matrix a = testing::random_symmetric(n, rng) + 6.0 * Matrix::Identity(n, n);
        const Matrix b = testing::random_psd(n, rng);
        const Matrix c = testing::random_matrix(n, n, rng);
        CHECK(residual(a, b, c, sylvester_solve(a, b, c)) <= 1e-10);
    }
    // Rectangular right-hand side.
    const Matrix a = testing::random_psd(3, rng) + Matrix::Identity(3, 3);
    const Matrix b = testing::random_psd(6, rng);
    const Matrix c = testing::random_matrix(3, 6, rng);
    CHECK(residual(a, b, c, sylvester_solve(a, b, c)) <= 1e-10);
}

TEST_CASE("sylvester_solve rejects singular pencils") {
    const Matrix id = Matrix::Identity(3, 3);
    try {
        sylvester_solve(id, -id, id);
        FAIL("expected SingularSystemError");
    } catch (const SingularSystemError& e) {
        CHECK(e.min_gap() == 0.0);
    }
    Matrix asym = id;
    asym(0, 1) = 1.0;
    CHECK_THROWS_AS(sylvester_solve(asym, id, id), InputError);
    CHECK_THROWS_AS(sylvester_solve(id, id, Matrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("sylvester_solve_rank_one matches the dense system") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 20; ++t) {
        const Index n = 7;
        const Matrix a = testing::random_psd(n, rng) + 0.5 * Matrix::Identity(n, n);
        const Matrix b = testing::random_symmetric(n, rng) * 0.1;
        const Matrix c = testing::random_matrix(n, n, rng);
        const Vector u = t % 2 ? Vector(Vector::Ones(n)) : Vector(testing::random_matrix(n, 1, rng));
        const double s = 0.3 + t;
        const Matrix full = a + s * u * u.transpose();
        const Matrix x = sylvester_solve_rank_one(symmetric_eigen(a), symmetric_eigen(b), u, s, c);
        CHECK(residual(full, b, c, x) <= 1e-10);
        CHECK((x - sylvester_solve(full, b, c)).norm() <= 1e-9 * x.norm());
    }
}

TEST_CASE("shifted eigendecomposition equals direct decomposition") {
    std::mt19937_64 rng(13);
    const Index n = 12;
    const Matrix k = testing::random_psd(n, rng);
    const Matrix m0 = 2.0 * 3.0 * k + Matrix::Ones(n, n);
    const auto cached = symmetric_eigen(m0);
    for (double rho : {0.1, 1.7, 250.0, 1e6}) {
        const Matrix a = m0 + 2.0 * rho * Matrix::Identity(n, n);
        const auto shifted = cached.shifted(2.0 * rho);
        const auto direct = symmetric_eigen(a);
        CHECK((shifted.values - direct.values).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, a.norm()));
        const Matrix rebuilt = shifted.vectors * shifted.values.asDiagonal() * shifted.vectors.transpose();
        CHECK((rebuilt - a).norm() <= 1e-8 * a.norm());
    }
}

TEST_CASE("svt closed-form cases") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 3.0;
    m(1, 1) = 1.0;
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = 1.0;
    CHECK((svt(m, 2.0) - expected).cwiseAbs().maxCoeff() == 0.0);

    std::mt19937_64 rng(14);
    const Matrix r = testing::random_matrix(6, 6, rng);
    CHECK((svt(r, 0.0) - r).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(svt(r, 1e6).isZero());
    CHECK_THROWS_AS(svt(r, -1.0), ParameterError);
}

TEST_CASE("svt shrinks singular values and never raises rank") {
    std::mt19937_64 rng(15);
    for (int t = 0; t < 20; ++t) {
        const Matrix m = testing::random_matrix(8, 3, rng) * testing::random_matrix(3, 8, rng);
        const double thr = 0.5 * (t + 1);
        const Vector sm = singular_values(m);
        const Vector sx = singular_values(svt(m, thr));
        const Vector expect = (sm.array() - thr).max(0.0);
        CHECK((sx - expect).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK((sx.array() > 1e-10).count() <= 3);
    }
}

TEST_CASE("svt is the nuclear-norm proximal point") {
    std::mt19937_64 rng(16);
    std::normal_distribution<double> normal;
    const Matrix m = testing::random_matrix(6, 6, rng);
    const double t = 0.8;
    const Matrix x = svt(m, t);
    auto prox_objective = [&](const Matrix& y) { return 0.5 * (y - m).squaredNorm() + t * nuclear_norm(y); };
    const double best = prox_objective(x);
    for (int i = 0; i < 200; ++i) {
        const double scale = i < 100 ? 1e-3 : 1e-1;
        const Matrix delta = scale * testing::random_matrix(6, 6, rng);
        CHECK(best <= prox_objective(x + delta) + 1e-12);
    }
}
