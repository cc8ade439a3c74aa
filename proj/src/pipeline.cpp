#include "nlssc/pipeline.hpp"

#include "nlssc/clusterer.hpp"
#include "nlssc/errors.hpp"
#include "nlssc/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

namespace nlssc {

using nlohmann::json;

void RunConfig::validate() const {
    solver.validate();
    restore.validate();
    if (mode == Mode::Nlkssc && !kernel) throw ParameterError("nlkssc needs an explicit kernel");
    if (mode == Mode::Nlssc && kernel && *kernel != KernelKind::Linear)
        throw ParameterError("nlssc always uses the linear Gram; use --mode nlkssc for kernels");
    if (sigma && !(*sigma > 0.0)) throw ParameterError("sigma must be > 0");
    if (n_clusters < 2) throw ParameterError("n_clusters must be >= 2");
    if (repeats < 1) throw ParameterError("repeats must be >= 1");
}

KernelKind RunConfig::effective_kernel() const {
    return mode == Mode::Nlssc ? KernelKind::Linear : kernel.value_or(KernelKind::Linear);
}

namespace {

Mode parse_mode(const std::string& s) {
    if (s == "nlssc") return Mode::Nlssc;
    if (s == "nlkssc") return Mode::Nlkssc;
    throw ParameterError("unknown mode '" + s + "'");
}

bool parse_switch(const json& v) {
    if (v.is_boolean()) return v.get<bool>();
    const auto s = v.get<std::string>();
    if (s == "on" || s == "true") return true;
    if (s == "off" || s == "false") return false;
    throw ParameterError("expected on/off, got '" + s + "'");
}

void apply_solver_key(const std::string& key, const json& v, SolverConfig& s) {
    if (key == "lambda") s.lambda = v.get<double>();
    else if (key == "mu") s.mu = v.get<double>();
    else if (key == "k") s.k = v.get<int>();
    else if (key == "rho0") s.rho0 = v.get<double>();
    else if (key == "delta_rho") s.delta_rho = v.get<double>();
    else if (key == "rho_max") s.rho_max = v.get<double>();
    else if (key == "epsilon") s.epsilon = v.get<double>();
    else if (key == "max_iters") s.max_iters = v.get<int>();
    else if (key == "track_objective") s.track_objective = v.get<bool>();
    else throw ParameterError("unknown solver key '" + key + "'");
}

void apply_restore_key(const std::string& key, const json& v, RunConfig& cfg) {
    if (key == "enabled") cfg.restore_enabled = parse_switch(v);
    else if (key == "tau") cfg.restore.tau = v.get<double>();
    else if (key == "repeats") cfg.restore.repeats = v.get<int>();
    else throw ParameterError("unknown restore key '" + key + "'");
}

}  // namespace

void apply_config_json(const json& j, RunConfig& cfg) {
    if (!j.is_object()) throw MalformedInputError("config must be a JSON object");
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "mode") cfg.mode = parse_mode(v.get<std::string>());
            else if (key == "kernel") cfg.kernel = v.is_null() ? std::nullopt : std::optional(parse_kernel_kind(v.get<std::string>()));
            else if (key == "sigma") cfg.sigma = v.is_null() ? std::nullopt : std::optional(v.get<double>());
            else if (key == "solver") {
                for (const auto& [sk, sv] : v.items()) apply_solver_key(sk, sv, cfg.solver);
            } else if (key == "restore") {
                if (v.is_object())
                    for (const auto& [rk, rv] : v.items()) apply_restore_key(rk, rv, cfg);
                else
                    cfg.restore_enabled = parse_switch(v);
            } else if (key == "tau") cfg.restore.tau = v.get<double>();
            else if (key == "restore_repeats") cfg.restore.repeats = v.get<int>();
            else if (key == "use_far") cfg.use_far = v.get<bool>();
            else if (key == "neighbor_metric") cfg.neighbor_metric = parse_neighbor_metric(v.get<std::string>());
            else if (key == "n_clusters" || key == "clusters") cfg.n_clusters = v.get<int>();
            else if (key == "repeats") cfg.repeats = v.get<int>();
            else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
            else apply_solver_key(key, v, cfg.solver);
        }
    } catch (const json::exception& e) {
        throw MalformedInputError(std::string("config: ") + e.what());
    }
}

json to_json(const RunConfig& cfg) {
    return {
        {"mode", cfg.mode == Mode::Nlssc ? "nlssc" : "nlkssc"},
        {"kernel", to_string(cfg.effective_kernel())},
        {"sigma", cfg.sigma ? json(*cfg.sigma) : json(nullptr)},
        {"solver",
         {{"lambda", cfg.solver.lambda},
          {"mu", cfg.solver.mu},
          {"k", cfg.solver.k},
          {"rho0", cfg.solver.rho0},
          {"delta_rho", cfg.solver.delta_rho},
          {"rho_max", cfg.solver.rho_max},
          {"epsilon", cfg.solver.epsilon},
          {"max_iters", cfg.solver.max_iters}}},
        {"restore",
         {{"enabled", cfg.restore_enabled}, {"tau", cfg.restore.tau}, {"repeats", cfg.restore.repeats}}},
        {"use_far", cfg.use_far},
        {"neighbor_metric", to_string(cfg.neighbor_metric)},
        {"n_clusters", cfg.n_clusters},
        {"repeats", cfg.repeats},
        {"seed", cfg.seed},
    };
}

GramMatrix build_run_gram(const DataMatrix& data, const RunConfig& cfg) {
    cfg.validate();
    return build_gram(data, cfg.effective_kernel(), cfg.sigma);
}

RunResult run_cluster(const DataMatrix& data, const RunConfig& cfg, const LabelVector* truth) {
    return run_cluster(build_run_gram(data, cfg), cfg, truth);
}

RunResult run_cluster(const GramMatrix& gram, const RunConfig& cfg, const LabelVector* truth) {
    cfg.validate();
    if (truth && static_cast<Index>(truth->size()) != gram.size())
        throw DimensionError("truth labels do not match the number of samples");

    const auto nbrs = neighbor_sets(gram, cfg.solver.k, cfg.neighbor_metric);
    const auto loc = build_locality(nbrs, cfg.use_far);
    auto solved = admm_solve(gram, loc, cfg.solver);

    RunResult out;
    out.report = std::move(solved.report);
    out.code = std::move(solved.code);
    if (cfg.restore_enabled) {
        auto restored = restore_all(out.code, gram, cfg.restore);
        out.code = std::move(restored.code);
        out.restore_links_added = restored.total_links_added;
    }

    const auto aff = build_affinity(out.code);
    for (int r = 0; r < cfg.repeats; ++r) {
        out.assignments.push_back(
            spectral_cluster(aff, cfg.n_clusters, cfg.seed + static_cast<std::uint64_t>(r)));
        if (truth) {
            out.ce.push_back(clustering_error(out.assignments.back(), *truth).ce);
            out.nmi.push_back(nmi(out.assignments.back(), *truth));
        }
    }
    if (truth) {
        out.representativeness = representativeness_order(nbrs, *truth);
        out.intra_cluster_edges = intra_cluster_edges(aff, *truth);
    }
    return out;
}

double mean(const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

ResultsDocument make_results_document(const RunResult& result, const RunConfig& cfg,
                                      bool include_gamma) {
    ResultsDocument doc;
    doc.assignment = result.assignment();
    if (!result.ce.empty()) {
        doc.ce = mean(result.ce);
        doc.nmi = mean(result.nmi);
    }
    doc.iterations = result.report.iterations;
    doc.converged = result.report.converged;
    doc.final_residuals = result.report.final_residuals;
    doc.objective = result.report.objective;
    doc.wall_time_s = result.report.wall_time_s;
    doc.config_echo = to_json(cfg);

    json& d = doc.diagnostics;
    d["rho_start"] = result.report.rho_start;
    d["objective_history"] = result.report.objective_history;
    d["restore_links_added"] = result.restore_links_added;
    d["spectral_runs"] = result.assignments.size();
    if (!result.ce.empty()) {
        d["ce_runs"] = result.ce;
        d["nmi_runs"] = result.nmi;
        d["ce_mean"] = mean(result.ce);
        d["ce_median"] = median(result.ce);
        d["nmi_mean"] = mean(result.nmi);
        d["nmi_median"] = median(result.nmi);
    }
    if (result.intra_cluster_edges) d["intra_cluster_edges"] = *result.intra_cluster_edges;
    if (result.representativeness) {
        const auto& r = *result.representativeness;
        d["representativeness"] = {
            {"correct_links", r.correct_links},
            {"wrong_links", r.wrong_links},
            {"order", std::isinf(r.order) ? json("inf") : json(r.order)},
            {"wrong_fraction", r.wrong_fraction},
        };
    }
    if (include_gamma) doc.code = &result.code;
    return doc;
}

GridSpec GridSpec::defaults() {
    GridSpec g;
    for (int i = 0; i <= 12; ++i) g.lambdas.push_back(1.0 + 0.5 * i);
    for (int i = 1; i <= 10; ++i) g.mus.push_back(0.1 * i);
    for (int k = 3; k <= 8; ++k) g.ks.push_back(k);
    return g;
}

GridSort parse_grid_sort(const std::string& name) {
    if (name == "ce" || name == "mean_ce") return GridSort::MeanCe;
    if (name == "lambda") return GridSort::Lambda;
    if (name == "mu") return GridSort::Mu;
    if (name == "k") return GridSort::K;
    throw ParameterError("unknown grid sort key '" + name + "'");
}

std::vector<GridRow> run_gridsearch(const GramMatrix& gram, const GridSpec& grid,
                                    const RunConfig& base, const LabelVector* truth, int workers,
                                    GridSort sort) {
    if (grid.size() == 0) throw ParameterError("grid is empty");
    std::vector<GridRow> rows;
    rows.reserve(grid.size());
    for (double l : grid.lambdas)
        for (double m : grid.mus)
            for (int k : grid.ks) {
                GridRow row;
                row.lambda = l;
                row.mu = m;
                row.k = k;
                rows.push_back(row);
            }

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
            GridRow& row = rows[i];
            RunConfig cfg = base;
            cfg.solver.lambda = row.lambda;
            cfg.solver.mu = row.mu;
            cfg.solver.k = row.k;
            cfg.solver.track_objective = false;
            try {
                const auto r = run_cluster(gram, cfg, truth);
                row.iterations = r.report.iterations;
                if (!r.ce.empty()) {
                    row.mean_ce = mean(r.ce);
                    row.median_ce = median(r.ce);
                    row.mean_nmi = mean(r.nmi);
                }
                if (!r.report.converged) row.error = "not converged";
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    const int n_threads = std::clamp(workers, 1, static_cast<int>(rows.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    auto key = [sort](const GridRow& r) {
        switch (sort) {
            case GridSort::MeanCe: return r.mean_ce.value_or(std::numeric_limits<double>::infinity());
            case GridSort::Lambda: return r.lambda;
            case GridSort::Mu: return r.mu;
            case GridSort::K: return static_cast<double>(r.k);
        }
        return 0.0;
    };
    std::stable_sort(rows.begin(), rows.end(),
                     [&](const GridRow& a, const GridRow& b) { return key(a) < key(b); });
    return rows;
}

void write_grid_csv(const std::vector<GridRow>& rows, std::ostream& out) {
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return std::string(buf);
    };
    auto opt = [&](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
    out << "lambda,mu,k,mean_ce,median_ce,mean_nmi,iterations,error\n";
    for (const auto& r : rows) {
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '\n', ' ');
        out << num(r.lambda) << ',' << num(r.mu) << ',' << r.k << ',' << opt(r.mean_ce) << ','
            << opt(r.median_ce) << ',' << opt(r.mean_nmi) << ',' << r.iterations << ',' << err << '\n';
    }
}

Evaluation evaluate(const LabelVector& pred, const LabelVector& truth) {
    return {clustering_error(pred, truth).ce, nmi(pred, truth)};
}

}  // namespace nlssc
