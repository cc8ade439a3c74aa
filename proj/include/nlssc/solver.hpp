#pragma once

#include "nlssc/kernels.hpp"
#include "nlssc/locality.hpp"
#include "nlssc/numerics.hpp"
#include "nlssc/types.hpp"

#include <array>
#include <vector>

namespace nlssc {

struct SolverConfig {
    double lambda = 3.0;
    double mu = 0.3;
    /// Neighbourhood size for the near/far sets.
    int k = 4;
    double rho0 = 0.1;
    double delta_rho = 0.1;
    double rho_max = 1e6;
    double epsilon = 1e-4;
    int max_iters = 500;
    /// Evaluate the objective at every iterate (one extra SVD per iteration).
    bool track_objective = true;

    void validate() const;
};

using Residuals = std::array<double, 4>;

/// ADMM iterate. gamma_plus is non-negative with zero diagonal after its
/// first update.
struct SolverState {
    Matrix gamma;
    Matrix gamma_plus;
    Matrix u;
    Matrix alpha_plus;
    Matrix alpha_u;
    Vector alpha_one;
    double rho = 0.0;
    int iter = 0;

    static SolverState zeros(Index n, double rho);
};

struct SolverReport {
    int iterations = 0;
    bool converged = false;
    Residuals final_residuals{};
    double objective = 0.0;
    /// rho actually used for the first iteration (rho0 raised to the
    /// convexity floor of the Gamma subproblem when needed).
    double rho_start = 0.0;
    double wall_time_s = 0.0;
    std::vector<Residuals> residual_history;
    std::vector<double> rho_history;
    std::vector<double> objective_history;
};

struct SolveResult {
    CodeMatrix code;
    SolverReport report;
};

/// ||G||_* + (lambda/2) Tr(K - 2 K G + G^T K G) + mu Tr(G L_hat G^T)
double objective(const GramMatrix& gram, const LocalityStructure& loc, const Matrix& gamma,
                 double lambda, double mu);

/// Smallest rho for which lambda K + 2 rho I + rho 11^T (+) 2 mu L_hat has
/// every eigenvalue sum >= rho, i.e. -2 mu lambda_min(L_hat) clipped at 0.
double convexity_rho_floor(const LocalityStructure& loc, double mu);

/// Gamma step. Solves
///   [lambda K + 2 rho I + rho 11^T] G + G [2 mu L_hat]
///       = lambda K + rho (G+ + U + 11^T) - alpha_U - alpha_+ - 1 alpha_1^T
/// with decompositions of lambda K and 2 mu L_hat computed once.
class GammaUpdate {
public:
    GammaUpdate(const GramMatrix& gram, const LocalityStructure& loc, const SolverConfig& cfg);

    Matrix operator()(const SolverState& state) const;

    /// Left-hand operator applied to G, for residual checks.
    Matrix apply_lhs(const Matrix& gamma, double rho) const;
    Matrix rhs(const SolverState& state) const;

private:
    Matrix lambda_k_;
    Matrix two_mu_l_hat_;
    SymmetricEigen gram_eig_;
    SymmetricEigen laplacian_eig_;
};

/// One-off Gamma step without caching.
Matrix update_gamma(const SolverState& state, const GramMatrix& gram,
                    const LocalityStructure& loc, const SolverConfig& cfg);

/// Stepwise ADMM driver. admm_solve() is the usual entry point; this class
/// exposes individual iterations.
class AdmmSolver {
public:
    AdmmSolver(const GramMatrix& gram, const LocalityStructure& loc, const SolverConfig& cfg);

    /// Runs one iteration and returns its four convergence norms.
    Residuals step();
    bool converged() const;

    const SolverState& state() const { return state_; }
    const SolverReport& report() const { return report_; }

    /// Runs until convergence or max_iters.
    SolveResult run();

    /// G+ with zero diagonal and unit column sums (zero columns left alone).
    static CodeMatrix finalize(const Matrix& gamma_plus);

private:
    const GramMatrix& gram_;
    const LocalityStructure& loc_;
    SolverConfig cfg_;
    GammaUpdate gamma_update_;
    SolverState state_;
    SolverReport report_;
    Matrix best_gamma_plus_;
    double best_residual_;
};

SolveResult admm_solve(const GramMatrix& gram, const LocalityStructure& loc,
                       const SolverConfig& cfg);

}  // namespace nlssc
