#include "nlssc/kernels.hpp"

#include "nlssc/errors.hpp"

#include <cmath>

namespace nlssc {

namespace {

Matrix pairwise_sq_distances(const Matrix& x) {
    const Index n = x.cols();
    Matrix d = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = j + 1; i < n; ++i) {
            const double v = (x.col(i) - x.col(j)).squaredNorm();
            d(i, j) = v;
            d(j, i) = v;
        }
    return d;
}

void require_samples(const DataMatrix& data) {
    if (data.samples() < 2 || data.dim() < 1)
        throw DimensionError("need at least 2 samples and 1 feature");
    if (!data.values.allFinite()) throw MalformedInputError("data contains non-finite entries");
}

}  // namespace

std::string_view to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::Linear: return "linear";
        case KernelKind::Gaussian: return "gaussian";
        case KernelKind::Hik: return "hik";
        case KernelKind::Precomputed: return "precomputed";
    }
    return "?";
}

KernelKind parse_kernel_kind(std::string_view name) {
    if (name == "linear") return KernelKind::Linear;
    if (name == "gaussian") return KernelKind::Gaussian;
    if (name == "hik") return KernelKind::Hik;
    if (name == "precomputed") return KernelKind::Precomputed;
    throw ParameterError("unknown kernel '" + std::string(name) + "'");
}

double gaussian_sigma(const DataMatrix& data) {
    require_samples(data);
    const Index n = data.samples();
    double sum = 0.0;
    for (Index j = 0; j < n; ++j)
        for (Index i = j + 1; i < n; ++i) sum += (data.values.col(i) - data.values.col(j)).squaredNorm();
    const double sigma = sum / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
    if (!(sigma > 0.0)) throw DegenerateKernelError("all samples coincide; gaussian sigma is 0");
    return sigma;
}

GramMatrix build_gram(const DataMatrix& data, KernelKind kind, std::optional<double> sigma) {
    require_samples(data);
    const Matrix& x = data.values;
    const Index n = x.cols();
    GramMatrix g;
    g.kind = kind;

    switch (kind) {
        case KernelKind::Linear: {
            g.values = Matrix::Zero(n, n);
            g.values.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
            g.values.triangularView<Eigen::StrictlyUpper>() = g.values.transpose();
            break;
        }
        case KernelKind::Gaussian: {
            const double s = sigma ? *sigma : gaussian_sigma(data);
            if (!(s > 0.0)) throw ParameterError("gaussian sigma must be > 0");
            g.sigma = s;
            g.values = (-pairwise_sq_distances(x).array() / s).exp().matrix();
            break;
        }
        case KernelKind::Hik: {
            if ((x.array() < 0.0).any())
                throw InvalidFeatureError("histogram intersection kernel needs non-negative features");
            g.values.resize(n, n);
            for (Index j = 0; j < n; ++j)
                for (Index i = j; i < n; ++i) {
                    const double v = x.col(i).cwiseMin(x.col(j)).sum();
                    g.values(i, j) = v;
                    g.values(j, i) = v;
                }
            break;
        }
        case KernelKind::Precomputed:
            throw ParameterError("precomputed kernels are loaded, not built from data");
    }
    return g;
}

GramMatrix precomputed_gram(Matrix values) {
    if (values.rows() != values.cols()) throw DimensionError("kernel matrix must be square");
    if (values.rows() < 2) throw DimensionError("kernel matrix needs at least 2 samples");
    if (!values.allFinite()) throw MalformedInputError("kernel matrix has non-finite entries");
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    if ((values - values.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw InputError("kernel matrix is not symmetric");
    GramMatrix g;
    g.values = 0.5 * (values + values.transpose());
    g.kind = KernelKind::Precomputed;
    return g;
}

}  // namespace nlssc
