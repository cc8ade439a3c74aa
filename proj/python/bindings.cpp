#include "nlssc/clusterer.hpp"
#include "nlssc/data.hpp"
#include "nlssc/errors.hpp"
#include "nlssc/kernels.hpp"
#include "nlssc/linkrestore.hpp"
#include "nlssc/locality.hpp"
#include "nlssc/metrics.hpp"
#include "nlssc/numerics.hpp"
#include "nlssc/pipeline.hpp"
#include "nlssc/solver.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace nlssc;

namespace {

// Python passes samples as rows; the core keeps them as columns.
DataMatrix from_rows(const Matrix& x) { return DataMatrix{x.transpose()}; }

RunConfig parse_config(const std::string& config_json) {
    RunConfig cfg;
    if (!config_json.empty()) apply_config_json(nlohmann::json::parse(config_json), cfg);
    cfg.validate();
    return cfg;
}

py::dict report_dict(const SolverReport& r) {
    py::dict d;
    d["iterations"] = r.iterations;
    d["converged"] = r.converged;
    d["final_residuals"] = std::vector<double>(r.final_residuals.begin(), r.final_residuals.end());
    d["objective"] = r.objective;
    d["rho_start"] = r.rho_start;
    d["wall_time_s"] = r.wall_time_s;
    std::vector<double> worst;
    for (const auto& res : r.residual_history) worst.push_back(*std::max_element(res.begin(), res.end()));
    d["max_residual_history"] = worst;
    d["objective_history"] = r.objective_history;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Non-negative local subspace sparse clustering core";

    static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
    static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InputError& e) {
            py::set_error(input_error, e.what());
        } catch (const NumericalError& e) {
            py::set_error(numerical_error, e.what());
        } catch (const nlohmann::json::exception& e) {
            py::set_error(input_error, e.what());
        }
    });

    m.def(
        "generate_synthetic",
        [](const std::string& spec, std::optional<std::uint64_t> seed) {
            auto s = parse_synthetic_spec(spec);
            if (seed) s.seed = *seed;
            auto d = generate_synthetic(s);
            return py::make_tuple(Matrix(d.data.values.transpose()), d.labels);
        },
        py::arg("spec"), py::arg("seed") = py::none(),
        "Returns (X, labels) with X of shape (n_samples, ambient_dim).");

    m.def(
        "build_gram",
        [](const Matrix& x, const std::string& kernel, std::optional<double> sigma) {
            return build_gram(from_rows(x), parse_kernel_kind(kernel), sigma).values;
        },
        py::arg("x"), py::arg("kernel") = "linear", py::arg("sigma") = py::none());

    m.def(
        "admm_solve",
        [](const Matrix& gram, const std::string& config_json) {
            const auto cfg = parse_config(config_json);
            const auto g = precomputed_gram(gram);
            const auto loc = build_locality(neighbor_sets(g, cfg.solver.k, cfg.neighbor_metric), cfg.use_far);
            auto r = admm_solve(g, loc, cfg.solver);
            return py::make_tuple(std::move(r.code.values), report_dict(r.report));
        },
        py::arg("gram"), py::arg("config_json") = "");

    m.def(
        "run_cluster",
        [](std::optional<Matrix> x, std::optional<Matrix> gram, const std::string& config_json,
           std::optional<LabelVector> labels, bool include_gamma) {
            const auto cfg = parse_config(config_json);
            const LabelVector* truth = labels ? &*labels : nullptr;
            RunResult r;
            if (gram) {
                r = run_cluster(precomputed_gram(*gram), cfg, truth);
            } else if (x) {
                r = run_cluster(from_rows(*x), cfg, truth);
            } else {
                throw InputError("run_cluster needs x or gram");
            }
            const auto doc = make_results_document(r, cfg, include_gamma);
            py::dict out;
            out["results_json"] = to_json(doc).dump();
            out["code"] = r.code.values;
            out["assignments"] = r.assignments;
            return out;
        },
        py::arg("x") = py::none(), py::arg("gram") = py::none(), py::arg("config_json") = "",
        py::arg("labels") = py::none(), py::arg("include_gamma") = false);

    m.def(
        "restore_links",
        [](const Matrix& gamma, const Matrix& gram, double tau, int repeats) {
            const RestoreConfig cfg{tau, repeats};
            cfg.validate();
            auto r = restore_all(CodeMatrix{gamma}, precomputed_gram(gram), cfg);
            return py::make_tuple(std::move(r.code.values), r.total_links_added);
        },
        py::arg("gamma"), py::arg("gram"), py::arg("tau") = 0.2, py::arg("repeats") = 1);

    m.def(
        "spectral_cluster",
        [](const Matrix& gamma, int n_clusters, std::uint64_t seed) {
            return spectral_cluster(build_affinity(CodeMatrix{gamma}), n_clusters, seed);
        },
        py::arg("gamma"), py::arg("n_clusters"), py::arg("seed") = 0);

    m.def("svt", &svt, py::arg("m"), py::arg("threshold"));
    m.def(
        "sylvester_solve", [](const Matrix& a, const Matrix& b, const Matrix& c) { return sylvester_solve(a, b, c); },
        py::arg("a"), py::arg("b"), py::arg("c"));
    m.def(
        "clustering_error", [](const LabelVector& p, const LabelVector& t) { return clustering_error(p, t).ce; },
        py::arg("pred"), py::arg("truth"));
    m.def("nmi", &nmi, py::arg("pred"), py::arg("truth"));
}
