#pragma once

#include "nlssc/data.hpp"
#include "nlssc/kernels.hpp"
#include "nlssc/linkrestore.hpp"
#include "nlssc/locality.hpp"
#include "nlssc/solver.hpp"
#include "nlssc/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nlssc {

enum class Mode { Nlssc, Nlkssc };

struct RunConfig {
    Mode mode = Mode::Nlssc;
    /// Required for nlkssc; nlssc always uses the linear Gram.
    std::optional<KernelKind> kernel;
    std::optional<double> sigma;
    SolverConfig solver;
    RestoreConfig restore;
    bool restore_enabled = true;
    /// Far-set term of the locality loss; off gives L_hat = L.
    bool use_far = true;
    NeighborMetric neighbor_metric = NeighborMetric::KernelDistance;
    int n_clusters = 2;
    int repeats = 10;
    std::uint64_t seed = 0;

    void validate() const;
    KernelKind effective_kernel() const;
};

/// Overlays keys present in j (RunConfig field names, solver/restore
/// nested or flat) onto cfg.
void apply_config_json(const nlohmann::json& j, RunConfig& cfg);
nlohmann::json to_json(const RunConfig& cfg);

struct RunResult {
    CodeMatrix code;  // after link-restore when enabled
    SolverReport report;
    std::vector<LabelVector> assignments;  // one per spectral run
    std::vector<double> ce;                // empty without truth labels
    std::vector<double> nmi;
    int restore_links_added = 0;
    std::optional<RepresentativenessReport> representativeness;
    /// Same-label pairs joined by an edge of the representation graph.
    std::optional<long> intra_cluster_edges;

    /// Assignment of the first spectral run.
    const LabelVector& assignment() const { return assignments.front(); }
};

/// Gram -> locality -> ADMM -> optional link-restore -> `repeats` spectral
/// runs with seeds seed, seed+1, ... The given gram replaces the one the
/// mode would build (used for precomputed kernels).
RunResult run_cluster(const DataMatrix& data, const RunConfig& cfg,
                      const LabelVector* truth = nullptr);
RunResult run_cluster(const GramMatrix& gram, const RunConfig& cfg,
                      const LabelVector* truth = nullptr);

GramMatrix build_run_gram(const DataMatrix& data, const RunConfig& cfg);

double mean(const std::vector<double>& v);
double median(std::vector<double> v);

/// Results document for a run; include_gamma adds Γ as sparse triplets.
ResultsDocument make_results_document(const RunResult& result, const RunConfig& cfg,
                                      bool include_gamma);

struct GridSpec {
    std::vector<double> lambdas;
    std::vector<double> mus;
    std::vector<int> ks;

    /// lambda in {1, 1.5, ..., 7}, mu in {0.1, ..., 1}, k in {3, ..., 8}.
    static GridSpec defaults();
    std::size_t size() const { return lambdas.size() * mus.size() * ks.size(); }
};

struct GridRow {
    double lambda = 0.0;
    double mu = 0.0;
    int k = 0;
    std::optional<double> mean_ce;
    std::optional<double> median_ce;
    std::optional<double> mean_nmi;
    int iterations = 0;
    std::string error;
};

enum class GridSort { MeanCe, Lambda, Mu, K };

GridSort parse_grid_sort(const std::string& name);

/// Evaluates every (lambda, mu, k) cell as run_cluster on up to `workers`
/// threads. Cell failures are recorded in the row's error field.
std::vector<GridRow> run_gridsearch(const GramMatrix& gram, const GridSpec& grid,
                                    const RunConfig& base, const LabelVector* truth,
                                    int workers = 1, GridSort sort = GridSort::MeanCe);

/// Header: lambda,mu,k,mean_ce,median_ce,mean_nmi,iterations,error
void write_grid_csv(const std::vector<GridRow>& rows, std::ostream& out);

struct Evaluation {
    double ce = 0.0;
    double nmi = 0.0;
};

Evaluation evaluate(const LabelVector& pred, const LabelVector& truth);

}  // namespace nlssc
