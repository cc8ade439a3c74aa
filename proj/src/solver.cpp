#include "nlssc/solver.hpp"

#include "nlssc/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace nlssc {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void check_sizes(const GramMatrix& gram, const LocalityStructure& loc) {
    if (gram.values.rows() != gram.values.cols() || loc.l_hat.rows() != gram.size() ||
        loc.l_hat.cols() != gram.size())
        throw DimensionError("Gram matrix and locality structure disagree on N");
}

const SolverConfig& validated(const SolverConfig& cfg) {
    cfg.validate();
    return cfg;
}

}  // namespace

void SolverConfig::validate() const {
    if (!(lambda > 0.0)) throw ParameterError("lambda must be > 0");
    if (!(mu >= 0.0)) throw ParameterError("mu must be >= 0");
    if (k < 1) throw ParameterError("k must be >= 1");
    if (!(rho0 > 0.0)) throw ParameterError("rho0 must be > 0");
    if (!(delta_rho >= 0.0)) throw ParameterError("delta_rho must be >= 0");
    if (!(rho_max >= rho0)) throw ParameterError("rho_max must be >= rho0");
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be > 0");
    if (max_iters < 1) throw ParameterError("max_iters must be >= 1");
}

SolverState SolverState::zeros(Index n, double rho) {
    SolverState s;
    s.gamma = Matrix::Zero(n, n);
    s.gamma_plus = Matrix::Zero(n, n);
    s.u = Matrix::Zero(n, n);
    s.alpha_plus = Matrix::Zero(n, n);
    s.alpha_u = Matrix::Zero(n, n);
    s.alpha_one = Vector::Zero(n);
    s.rho = rho;
    return s;
}

double objective(const GramMatrix& gram, const LocalityStructure& loc, const Matrix& gamma,
                 double lambda, double mu) {
    check_sizes(gram, loc);
    const Matrix& k = gram.values;
    const Matrix kg = k * gamma;
    const double fit = k.trace() - 2.0 * kg.trace() + (gamma.transpose() * kg).trace();
    const double locality = (gamma * loc.l_hat * gamma.transpose()).trace();
    return nuclear_norm(gamma) + 0.5 * lambda * fit + mu * locality;
}

double convexity_rho_floor(const LocalityStructure& loc, double mu) {
    if (mu == 0.0 || loc.l_hat.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(loc.l_hat, Eigen::EigenvaluesOnly);
    return std::max(0.0, -2.0 * mu * solver.eigenvalues().minCoeff());
}

GammaUpdate::GammaUpdate(const GramMatrix& gram, const LocalityStructure& loc,
                         const SolverConfig& cfg)
    : lambda_k_(cfg.lambda * gram.values),
      two_mu_l_hat_(2.0 * cfg.mu * loc.l_hat),
      gram_eig_(symmetric_eigen(lambda_k_)),
      laplacian_eig_(symmetric_eigen(two_mu_l_hat_)) {
    check_sizes(gram, loc);
}

Matrix GammaUpdate::rhs(const SolverState& s) const {
    Matrix c = lambda_k_ + s.rho * (s.gamma_plus + s.u) - s.alpha_u - s.alpha_plus;
    c.array() += s.rho;
    c.rowwise() -= s.alpha_one.transpose();
    return c;
}

Matrix GammaUpdate::apply_lhs(const Matrix& gamma, double rho) const {
    Matrix out = lambda_k_ * gamma + 2.0 * rho * gamma + gamma * two_mu_l_hat_;
    out.rowwise() += rho * gamma.colwise().sum();
    return out;
}

Matrix GammaUpdate::operator()(const SolverState& s) const {
    const Vector ones = Vector::Ones(lambda_k_.rows());
    return sylvester_solve_rank_one(gram_eig_.shifted(2.0 * s.rho), laplacian_eig_, ones, s.rho,
                                    rhs(s));
}

Matrix update_gamma(const SolverState& state, const GramMatrix& gram,
                    const LocalityStructure& loc, const SolverConfig& cfg) {
    return GammaUpdate(gram, loc, cfg)(state);
}

AdmmSolver::AdmmSolver(const GramMatrix& gram, const LocalityStructure& loc,
                       const SolverConfig& cfg)
    : gram_(gram), loc_(loc), cfg_(validated(cfg)), gamma_update_(gram, loc, cfg_) {
    const double rho = std::min(cfg_.rho_max, std::max(cfg_.rho0, convexity_rho_floor(loc_, cfg_.mu)));
    state_ = SolverState::zeros(gram.size(), rho);
    report_.rho_start = rho;
    best_gamma_plus_ = state_.gamma_plus;
    best_residual_ = std::numeric_limits<double>::infinity();
}

Residuals AdmmSolver::step() {
    auto& s = state_;
    const double rho = s.rho;

    Matrix gamma = gamma_update_(s);

    s.u = svt(gamma + s.alpha_u / rho, 1.0 / rho);

    s.gamma_plus = (gamma + s.alpha_plus / rho).cwiseMax(0.0);
    s.gamma_plus.diagonal().setZero();

    s.alpha_plus += rho * (gamma - s.gamma_plus);
    s.alpha_u += rho * (gamma - s.u);
    const Vector affine_gap = gamma.colwise().sum().transpose().array() - 1.0;
    s.alpha_one += rho * affine_gap;

    const Residuals r{max_abs(gamma - s.gamma), max_abs(s.gamma_plus - gamma), max_abs(s.u - gamma),
                      affine_gap.size() ? affine_gap.cwiseAbs().maxCoeff() : 0.0};
    s.gamma = std::move(gamma);
    s.rho = std::min(rho * (1.0 + cfg_.delta_rho), cfg_.rho_max);
    ++s.iter;

    report_.iterations = s.iter;
    report_.final_residuals = r;
    report_.residual_history.push_back(r);
    report_.rho_history.push_back(rho);
    if (cfg_.track_objective)
        report_.objective_history.push_back(objective(gram_, loc_, s.gamma, cfg_.lambda, cfg_.mu));

    const double worst = *std::max_element(r.begin(), r.end());
    if (!std::isfinite(worst)) throw NumericalError("ADMM iterate diverged (non-finite residual)");
    if (worst < best_residual_) {
        best_residual_ = worst;
        best_gamma_plus_ = s.gamma_plus;
    }
    report_.converged = worst <= cfg_.epsilon;
    return r;
}

bool AdmmSolver::converged() const { return report_.converged; }

CodeMatrix AdmmSolver::finalize(const Matrix& gamma_plus) {
    CodeMatrix code{gamma_plus.cwiseMax(0.0)};
    code.values.diagonal().setZero();
    for (Index j = 0; j < code.values.cols(); ++j) {
        const double sum = code.values.col(j).sum();
        if (sum > 0.0) code.values.col(j) /= sum;
    }
    return code;
}

SolveResult AdmmSolver::run() {
    const auto start = std::chrono::steady_clock::now();
    while (!converged() && state_.iter < cfg_.max_iters) step();

    SolveResult out;
    out.code = finalize(converged() ? state_.gamma_plus : best_gamma_plus_);
    out.report = report_;
    out.report.objective = objective(gram_, loc_, out.code.values, cfg_.lambda, cfg_.mu);
    out.report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

SolveResult admm_solve(const GramMatrix& gram, const LocalityStructure& loc,
                       const SolverConfig& cfg) {
    return AdmmSolver(gram, loc, cfg).run();
}

}  // namespace nlssc
