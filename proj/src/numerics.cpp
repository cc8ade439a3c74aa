#include "nlssc/numerics.hpp"

#include "nlssc/errors.hpp"

#include <cmath>
#include <sstream>

namespace nlssc {

namespace {

double spectral_radius(const SymmetricEigen& e) {
    return e.values.size() == 0 ? 0.0 : e.values.cwiseAbs().maxCoeff();
}

double min_gap(const SymmetricEigen& a, const SymmetricEigen& b) {
    double gap = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < a.values.size(); ++i)
        for (Index j = 0; j < b.values.size(); ++j)
            gap = std::min(gap, std::abs(a.values[i] + b.values[j]));
    return gap;
}

void check_pencil(const SymmetricEigen& a, const SymmetricEigen& b) {
    const double gap = min_gap(a, b);
    const double scale = spectral_radius(a) + spectral_radius(b);
    if (!(gap > 1e-12 * scale) || gap == 0.0) {
        std::ostringstream msg;
        msg << "Sylvester system is singular: min |lambda_i(A) + lambda_j(B)| = " << gap;
        throw SingularSystemError(msg.str(), gap);
    }
}

void check_shapes(const SymmetricEigen& a, const SymmetricEigen& b, const Matrix& c) {
    if (c.rows() != a.values.size() || c.cols() != b.values.size())
        throw DimensionError("Sylvester right-hand side has the wrong shape");
}

}  // namespace

SymmetricEigen SymmetricEigen::shifted(double shift) const {
    SymmetricEigen out;
    out.values = values.array() + shift;
    out.vectors = vectors;
    return out;
}

SymmetricEigen symmetric_eigen(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("eigendecomposition needs a square matrix");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (m.size() > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw InputError("matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix sylvester_solve(const SymmetricEigen& a, const SymmetricEigen& b, const Matrix& c) {
    check_shapes(a, b, c);
    check_pencil(a, b);
    Matrix y = a.vectors.transpose() * c * b.vectors;
    for (Index j = 0; j < y.cols(); ++j)
        for (Index i = 0; i < y.rows(); ++i) y(i, j) /= a.values[i] + b.values[j];
    return a.vectors * y * b.vectors.transpose();
}

Matrix sylvester_solve(const Matrix& a, const Matrix& b, const Matrix& c) {
    return sylvester_solve(symmetric_eigen(a), symmetric_eigen(b), c);
}

Matrix sylvester_solve_rank_one(const SymmetricEigen& a, const SymmetricEigen& b,
                                const Vector& u, double s, const Matrix& c) {
    check_shapes(a, b, c);
    if (u.size() != a.values.size()) throw DimensionError("rank-one vector has the wrong length");
    check_pencil(a, b);

    // Column j in eigen coordinates: (Lambda_A + lambda_j(B) I + s a a^T) y_j = c~_j
    const Vector ua = a.vectors.transpose() * u;
    Matrix y = a.vectors.transpose() * c * b.vectors;
    const double scale = spectral_radius(a) + spectral_radius(b) + std::abs(s) * ua.squaredNorm();
    Vector dinv_a(ua.size());
    for (Index j = 0; j < y.cols(); ++j) {
        const Vector diag = a.values.array() + b.values[j];
        dinv_a = ua.cwiseQuotient(diag);
        const double denom = 1.0 + s * ua.dot(dinv_a);
        if (!(std::abs(denom) > 1e-12 * std::max(1.0, scale))) {
            throw SingularSystemError("rank-one corrected Sylvester system is singular",
                                      std::abs(denom));
        }
        auto col = y.col(j);
        col = col.cwiseQuotient(diag);
        col -= (s * ua.dot(col) / denom) * dinv_a;
    }
    return a.vectors * y * b.vectors.transpose();
}

Matrix svt(const Matrix& m, double threshold) {
    if (threshold < 0.0) throw ParameterError("SVT threshold must be >= 0");
    if (!m.allFinite()) throw NumericalError("SVT input has non-finite entries");
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector shrunk = (svd.singularValues().array() - threshold).max(0.0);
    Index rank = 0;
    while (rank < shrunk.size() && shrunk[rank] > 0.0) ++rank;
    return svd.matrixU().leftCols(rank) * shrunk.head(rank).asDiagonal() *
           svd.matrixV().leftCols(rank).transpose();
}

double nuclear_norm(const Matrix& m) {
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

}  // namespace nlssc
