// nlssc command-line front end: generate | cluster | gridsearch | eval
#include "nlssc/data.hpp"
#include "nlssc/errors.hpp"
#include "nlssc/metrics.hpp"
#include "nlssc/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

enum ExitCode { kOk = 0, kNotConverged = 2, kInputError = 3, kNumericalError = 4 };

struct InputOptions {
    std::string data_path;
    std::string kernel_path;
    std::string layout = "rows";
    std::string generate;
    std::optional<std::uint64_t> gen_seed;
    std::string labels_path;
    std::string config_path;
};

/// Flags that override config-file values. Empty optionals leave the value
/// from the file (or the default) in place.
struct Overrides {
    std::optional<std::string> mode, kernel, restore, neighbor_metric;
    std::optional<double> sigma, lambda, mu, rho0, delta_rho, rho_max, epsilon, tau;
    std::optional<int> k, max_iters, restore_repeats, clusters, repeats;
    std::optional<std::uint64_t> seed;
    bool no_far = false;
};

void add_input_options(CLI::App* app, InputOptions& in) {
    app->add_option("--data", in.data_path, "Numeric CSV data file");
    app->add_option("--kernel-file", in.kernel_path, "CSV of a precomputed N x N kernel matrix");
    app->add_option("--layout", in.layout, "CSV orientation: rows (samples are rows) or columns")
        ->check(CLI::IsMember({"rows", "columns"}));
    app->add_option("--generate", in.generate,
                    "Synthetic data instead of --data, e.g. \"3x4@30,n=50,noise=0.05\"");
    app->add_option("--gen-seed", in.gen_seed, "Seed for --generate (default: the spec's seed=)");
    app->add_option("--labels", in.labels_path, "Ground-truth labels for CE/NMI");
    app->add_option("--config", in.config_path, "JSON config with RunConfig field names");
}

void add_run_options(CLI::App* app, Overrides& o) {
    app->add_option("--mode", o.mode, "nlssc or nlkssc")->check(CLI::IsMember({"nlssc", "nlkssc"}));
    app->add_option("--kernel", o.kernel, "linear, gaussian or hik (nlkssc)");
    app->add_option("--sigma", o.sigma, "Gaussian bandwidth override");
    app->add_option("--lambda", o.lambda, "Reconstruction weight");
    app->add_option("--mu", o.mu, "Locality weight");
    app->add_option("--k", o.k, "Near/far neighbourhood size");
    app->add_option("--rho0", o.rho0);
    app->add_option("--delta-rho", o.delta_rho);
    app->add_option("--rho-max", o.rho_max);
    app->add_option("--epsilon", o.epsilon, "Convergence tolerance");
    app->add_option("--max-iters", o.max_iters);
    app->add_option("--restore", o.restore, "Link-restore on/off")->check(CLI::IsMember({"on", "off"}));
    app->add_option("--tau", o.tau, "Link-restore closeness threshold");
    app->add_option("--restore-repeats", o.restore_repeats);
    app->add_flag("--no-far", o.no_far, "Drop the far-set term (B = 0)");
    app->add_option("--neighbor-metric", o.neighbor_metric, "kernel-distance or raw-similarity");
    app->add_option("--clusters", o.clusters, "Number of clusters");
    app->add_option("--repeats", o.repeats, "Spectral clustering runs");
    app->add_option("--seed", o.seed, "Seed of the first spectral run");
}

nlssc::RunConfig resolve_config(const InputOptions& in, const Overrides& o) {
    nlssc::RunConfig cfg;
    if (!in.config_path.empty()) {
        std::ifstream f(in.config_path);
        if (!f) throw nlssc::IoError("cannot open config " + in.config_path);
        nlohmann::json j;
        try {
            f >> j;
        } catch (const nlohmann::json::exception& e) {
            throw nlssc::MalformedInputError("config " + in.config_path + ": " + e.what());
        }
        nlssc::apply_config_json(j, cfg);
    }
    if (o.mode) cfg.mode = *o.mode == "nlssc" ? nlssc::Mode::Nlssc : nlssc::Mode::Nlkssc;
    if (o.kernel) cfg.kernel = nlssc::parse_kernel_kind(*o.kernel);
    if (o.sigma) cfg.sigma = o.sigma;
    if (o.lambda) cfg.solver.lambda = *o.lambda;
    if (o.mu) cfg.solver.mu = *o.mu;
    if (o.k) cfg.solver.k = *o.k;
    if (o.rho0) cfg.solver.rho0 = *o.rho0;
    if (o.delta_rho) cfg.solver.delta_rho = *o.delta_rho;
    if (o.rho_max) cfg.solver.rho_max = *o.rho_max;
    if (o.epsilon) cfg.solver.epsilon = *o.epsilon;
    if (o.max_iters) cfg.solver.max_iters = *o.max_iters;
    if (o.restore) cfg.restore_enabled = *o.restore == "on";
    if (o.tau) cfg.restore.tau = *o.tau;
    if (o.restore_repeats) cfg.restore.repeats = *o.restore_repeats;
    if (o.no_far) cfg.use_far = false;
    if (o.neighbor_metric) cfg.neighbor_metric = nlssc::parse_neighbor_metric(*o.neighbor_metric);
    if (o.clusters) cfg.n_clusters = *o.clusters;
    if (o.repeats) cfg.repeats = *o.repeats;
    if (o.seed) cfg.seed = *o.seed;
    return cfg;
}

struct Problem {
    nlssc::GramMatrix gram;
    std::optional<nlssc::LabelVector> truth;
};

Problem load_problem(const InputOptions& in, nlssc::RunConfig& cfg, bool clusters_given) {
    const int sources = !in.data_path.empty() + !in.generate.empty() + !in.kernel_path.empty();
    if (sources != 1) throw nlssc::ParameterError("give exactly one of --data, --generate, --kernel-file");

    Problem p;
    const auto layout = in.layout == "rows" ? nlssc::CsvLayout::RowsAreSamples
                                            : nlssc::CsvLayout::ColumnsAreSamples;
    if (!in.kernel_path.empty()) {
        if (cfg.mode != nlssc::Mode::Nlkssc)
            throw nlssc::ParameterError("--kernel-file requires --mode nlkssc");
        cfg.kernel = nlssc::KernelKind::Precomputed;
        p.gram = nlssc::precomputed_gram(
            nlssc::load_csv(in.kernel_path, nlssc::CsvLayout::ColumnsAreSamples).values);
    } else {
        nlssc::DataMatrix data;
        if (!in.generate.empty()) {
            auto spec = nlssc::parse_synthetic_spec(in.generate);
            if (in.gen_seed) spec.seed = *in.gen_seed;
            auto gen = nlssc::generate_synthetic(spec);
            data = std::move(gen.data);
            p.truth = std::move(gen.labels);
            if (!clusters_given) cfg.n_clusters = spec.num_subspaces;
        } else {
            data = nlssc::load_csv(in.data_path, layout);
        }
        p.gram = nlssc::build_run_gram(data, cfg);
    }
    if (!in.labels_path.empty()) p.truth = nlssc::load_labels(in.labels_path);
    return p;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw nlssc::MalformedInputError("bad grid value '" + item + "'");
        }
    }
    if (out.empty()) throw nlssc::ParameterError("empty grid list");
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f || !(f << text)) throw nlssc::IoError("cannot write " + path);
}

int cmd_generate(const std::string& spec_text, std::optional<std::uint64_t> seed,
                 const std::string& out, const std::string& labels_out) {
    auto spec = nlssc::parse_synthetic_spec(spec_text);
    if (seed) spec.seed = *seed;
    const auto gen = nlssc::generate_synthetic(spec);
    nlssc::save_csv(gen.data, out);
    if (!labels_out.empty()) nlssc::save_labels(gen.labels, labels_out);
    std::cerr << "wrote " << gen.data.samples() << " samples of dimension " << gen.data.dim()
              << " to " << out << '\n';
    return kOk;
}

int cmd_cluster(const InputOptions& in, const Overrides& o, const std::string& out,
                const std::string& assignment_out, bool include_gamma) {
    auto cfg = resolve_config(in, o);
    const auto problem = load_problem(in, cfg, o.clusters.has_value());
    const auto* truth = problem.truth ? &*problem.truth : nullptr;
    const auto result = nlssc::run_cluster(problem.gram, cfg, truth);
    const auto doc = nlssc::make_results_document(result, cfg, include_gamma);
    write_text(out, nlssc::to_json(doc).dump(2) + "\n");
    if (!assignment_out.empty()) nlssc::save_labels(result.assignment(), assignment_out);

    std::cerr << "iterations " << result.report.iterations
              << (result.report.converged ? " (converged)" : " (NOT converged)") << '\n';
    if (!result.ce.empty()) {
        char line[160];
        std::snprintf(line, sizeof line, "CE mean %.4f median %.4f (%.2f%%), NMI mean %.4f\n",
                      nlssc::mean(result.ce), nlssc::median(result.ce),
                      100.0 * nlssc::mean(result.ce), nlssc::mean(result.nmi));
        std::cerr << line;
    }
    return result.report.converged ? kOk : kNotConverged;
}

int cmd_gridsearch(const InputOptions& in, const Overrides& o, const std::string& lambdas,
                   const std::string& mus, const std::string& ks, int workers,
                   const std::string& sort_by, const std::string& out) {
    auto cfg = resolve_config(in, o);
    const auto problem = load_problem(in, cfg, o.clusters.has_value());
    auto grid = nlssc::GridSpec::defaults();
    if (!lambdas.empty()) grid.lambdas = parse_list(lambdas);
    if (!mus.empty()) grid.mus = parse_list(mus);
    if (!ks.empty()) {
        grid.ks.clear();
        for (double k : parse_list(ks)) grid.ks.push_back(static_cast<int>(k));
    }
    const auto rows = nlssc::run_gridsearch(problem.gram, grid, cfg,
                                            problem.truth ? &*problem.truth : nullptr, workers,
                                            nlssc::parse_grid_sort(sort_by));
    std::ostringstream csv;
    nlssc::write_grid_csv(rows, csv);
    write_text(out, csv.str());
    return kOk;
}

int cmd_eval(const std::string& pred_path, const std::string& truth_path) {
    const auto pred = nlssc::load_labels(pred_path);
    const auto truth = nlssc::load_labels(truth_path);
    const auto e = nlssc::evaluate(pred, truth);
    nlohmann::json j{{"ce", e.ce}, {"nmi", e.nmi}};
    std::cout << j.dump(2) << '\n';
    char line[96];
    std::snprintf(line, sizeof line, "CE %.4f (%.2f%%), NMI %.4f\n", e.ce, 100.0 * e.ce, e.nmi);
    std::cerr << line;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-negative local subspace sparse clustering (NLSSC / NLKSSC)"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generate", "Sample a union of affine subspaces");
    std::string gen_spec = "3x4@30,n=50,noise=0.05", gen_out, gen_labels;
    std::optional<std::uint64_t> gen_seed;
    gen->add_option("--spec", gen_spec, "<n>x<dim>@<ambient>[,n=..][,noise=..][,offset=..][,seed=..]");
    gen->add_option("--seed", gen_seed);
    gen->add_option("--out", gen_out, "Data CSV (one sample per row)")->required();
    gen->add_option("--labels-out", gen_labels);

    InputOptions cl_in;
    Overrides cl_o;
    std::string cl_out, cl_assign;
    bool cl_gamma = false;
    auto* cluster = app.add_subcommand("cluster", "Solve, restore links, spectral-cluster");
    add_input_options(cluster, cl_in);
    add_run_options(cluster, cl_o);
    cluster->add_option("--out", cl_out, "Results JSON (default stdout)");
    cluster->add_option("--assignment-out", cl_assign, "Labels of the first spectral run");
    cluster->add_flag("--include-gamma", cl_gamma, "Write the code matrix as sparse triplets");

    InputOptions gs_in;
    Overrides gs_o;
    std::string gs_l, gs_m, gs_k, gs_sort = "ce", gs_out;
    int gs_workers = 1;
    auto* grid = app.add_subcommand("gridsearch", "Evaluate a (lambda, mu, k) grid");
    add_input_options(grid, gs_in);
    add_run_options(grid, gs_o);
    grid->add_option("--lambdas", gs_l, "Comma list (default 1,1.5,...,7)");
    grid->add_option("--mus", gs_m, "Comma list (default 0.1,...,1)");
    grid->add_option("--ks", gs_k, "Comma list (default 3,...,8)");
    grid->add_option("--workers", gs_workers, "Concurrent cells");
    grid->add_option("--sort-by", gs_sort, "ce, lambda, mu or k")
        ->check(CLI::IsMember({"ce", "lambda", "mu", "k"}));
    grid->add_option("--out", gs_out, "CSV table (default stdout)");

    std::string ev_pred, ev_truth;
    auto* eval = app.add_subcommand("eval", "CE and NMI of a labelling");
    eval->add_option("--pred", ev_pred)->required();
    eval->add_option("--truth", ev_truth)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*gen) return cmd_generate(gen_spec, gen_seed, gen_out, gen_labels);
        if (*cluster) return cmd_cluster(cl_in, cl_o, cl_out, cl_assign, cl_gamma);
        if (*grid) return cmd_gridsearch(gs_in, gs_o, gs_l, gs_m, gs_k, gs_workers, gs_sort, gs_out);
        if (*eval) return cmd_eval(ev_pred, ev_truth);
    } catch (const nlssc::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const nlssc::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericalError;
    }
    return kOk;
}
