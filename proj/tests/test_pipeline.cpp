#include "nlssc/errors.hpp"
#include "nlssc/pipeline.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <sstream>

using namespace nlssc;

namespace {

SyntheticData small_data(std::uint64_t seed = 2) {
    return generate_synthetic(SyntheticSpec{2, 10, 2, 15, 0.02, 0.0, seed});
}

RunConfig small_config() {
    RunConfig cfg;
    cfg.n_clusters = 2;
    cfg.repeats = 3;
    cfg.solver.k = 3;
    cfg.solver.lambda = 10.0;
    return cfg;
}

}  // namespace

TEST_CASE("run_cluster end to end") {
    const auto d = small_data();
    const auto r = run_cluster(d.data, small_config(), &d.labels);
    CHECK(r.report.converged);
    CHECK(r.assignments.size() == 3);
    CHECK(r.ce.size() == 3);
    CHECK(median(r.ce) <= 0.1);
    CHECK(r.representativeness.has_value());
    CHECK(r.intra_cluster_edges.value() > 0);

    const auto no_truth = run_cluster(d.data, small_config());
    CHECK(no_truth.ce.empty());
    CHECK(no_truth.assignments == r.assignments);
}

TEST_CASE("nlkssc with the linear kernel reproduces nlssc") {
    const auto d = small_data(5);
    auto cfg = small_config();
    const auto a = run_cluster(d.data, cfg, &d.labels);
    cfg.mode = Mode::Nlkssc;
    cfg.kernel = KernelKind::Linear;
    const auto b = run_cluster(d.data, cfg, &d.labels);
    CHECK((a.code.values - b.code.values).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK(a.assignments == b.assignments);
}

TEST_CASE("nlkssc with gaussian and hik kernels runs") {
    const auto d = small_data(6);
    auto cfg = small_config();
    cfg.mode = Mode::Nlkssc;
    for (auto kind : {KernelKind::Gaussian, KernelKind::Hik}) {
        cfg.kernel = kind;
        const DataMatrix x{kind == KernelKind::Hik ? Matrix(d.data.values.cwiseAbs()) : d.data.values};
        const auto r = run_cluster(x, cfg, &d.labels);
        CHECK(r.code.values.minCoeff() >= 0.0);
        CHECK(r.assignments.size() == 3);
    }
}

TEST_CASE("RunConfig validation") {
    RunConfig cfg;
    cfg.mode = Mode::Nlkssc;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg.mode = Mode::Nlssc;
    cfg.kernel = KernelKind::Gaussian;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg.kernel.reset();
    cfg.n_clusters = 1;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
}

TEST_CASE("config json overlay") {
    RunConfig cfg;
    apply_config_json(nlohmann::json::parse(R"({
        "mode": "nlkssc", "kernel": "gaussian", "lambda": 2.5,
        "solver": {"mu": 0.7, "k": 6},
        "restore": {"enabled": "off", "tau": 0.3},
        "n_clusters": 4, "repeats": 2, "seed": 9, "neighbor_metric": "raw-similarity"
    })"),
                      cfg);
    CHECK(cfg.mode == Mode::Nlkssc);
    CHECK(cfg.kernel == KernelKind::Gaussian);
    CHECK(cfg.solver.lambda == 2.5);
    CHECK(cfg.solver.mu == 0.7);
    CHECK(cfg.solver.k == 6);
    CHECK_FALSE(cfg.restore_enabled);
    CHECK(cfg.restore.tau == 0.3);
    CHECK(cfg.n_clusters == 4);
    CHECK(cfg.seed == 9);
    CHECK(cfg.neighbor_metric == NeighborMetric::RawSimilarity);

    RunConfig echoed;
    apply_config_json(to_json(cfg), echoed);
    CHECK(to_json(echoed) == to_json(cfg));

    CHECK_THROWS_AS(apply_config_json(nlohmann::json::parse(R"({"lamda": 1})"), cfg), ParameterError);
    CHECK_THROWS_AS(apply_config_json(nlohmann::json::parse(R"({"lambda": "x"})"), cfg), MalformedInputError);
}

TEST_CASE("results document is reproducible modulo timing") {
    const auto d = small_data();
    const auto cfg = small_config();
    auto dump = [&] {
        const auto r = run_cluster(d.data, cfg, &d.labels);
        auto j = to_json(make_results_document(r, cfg, true));
        j.erase("wall_time_s");
        return j.dump();
    };
    const auto first = dump();
    CHECK(first == dump());
    const auto j = nlohmann::json::parse(first);
    CHECK(j["assignment"].size() == 30);
    CHECK(j["diagnostics"]["ce_runs"].size() == 3);
    CHECK(j["gamma"]["n"] == 30);
    CHECK(j["config_echo"]["solver"]["k"] == 3);
}

TEST_CASE("grid defaults") {
    const auto g = GridSpec::defaults();
    CHECK(g.lambdas.size() == 13);
    CHECK(g.mus.size() == 10);
    CHECK(g.ks.size() == 6);
    CHECK(g.size() == 780);
    CHECK(g.lambdas.front() == 1.0);
    CHECK(g.lambdas.back() == 7.0);
    CHECK(g.mus.back() == doctest::Approx(1.0));
    CHECK(g.ks.front() == 3);
    CHECK(g.ks.back() == 8);
}

TEST_CASE("single-cell grid equals run_cluster") {
    const auto d = small_data();
    auto cfg = small_config();
    cfg.solver.lambda = 2.0;
    cfg.solver.mu = 0.4;
    const auto gram = build_run_gram(d.data, cfg);
    const auto rows = run_gridsearch(gram, GridSpec{{2.0}, {0.4}, {3}}, cfg, &d.labels);
    REQUIRE(rows.size() == 1);
    const auto r = run_cluster(gram, cfg, &d.labels);
    CHECK(rows[0].mean_ce.value() == mean(r.ce));
    CHECK(rows[0].median_ce.value() == median(r.ce));
    CHECK(rows[0].mean_nmi.value() == mean(r.nmi));
    CHECK(rows[0].iterations == r.report.iterations);
    CHECK(rows[0].error.empty());
}

TEST_CASE("grid search sorting, slices and errors") {
    const auto d = small_data();
    auto cfg = small_config();
    cfg.repeats = 1;
    const auto gram = build_run_gram(d.data, cfg);

    const auto slice = run_gridsearch(gram, GridSpec{{3.0, 1.0, 2.0}, {0.3}, {3}}, cfg, &d.labels, 2,
                                      GridSort::Lambda);
    REQUIRE(slice.size() == 3);
    CHECK(slice[0].lambda == 1.0);
    CHECK(slice[1].lambda == 2.0);
    CHECK(slice[2].lambda == 3.0);

    const auto by_ce = run_gridsearch(gram, GridSpec{{1.0, 3.0}, {0.1, 0.5}, {2, 3}}, cfg, &d.labels, 3);
    for (std::size_t i = 1; i < by_ce.size(); ++i) CHECK(*by_ce[i - 1].mean_ce <= *by_ce[i].mean_ce);

    // k = 40 is invalid for N = 30; the cell records the error and the search continues.
    const auto with_error = run_gridsearch(gram, GridSpec{{1.0}, {0.3}, {3, 40}}, cfg, &d.labels);
    REQUIRE(with_error.size() == 2);
    CHECK(with_error[0].error.empty());
    CHECK(with_error[1].k == 40);
    CHECK_FALSE(with_error[1].error.empty());

    std::ostringstream csv;
    write_grid_csv(with_error, csv);
    const auto text = csv.str();
    CHECK(text.rfind("lambda,mu,k,mean_ce,median_ce,mean_nmi,iterations,error\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);

    CHECK_THROWS_AS(run_gridsearch(gram, GridSpec{{}, {0.1}, {3}}, cfg, nullptr), ParameterError);
}

TEST_CASE("evaluate") {
    const auto e = evaluate({1, 2, 2, 2}, {1, 1, 2, 2});
    CHECK(e.ce == 0.25);
    CHECK(e.nmi > 0.0);
    CHECK_THROWS_AS(evaluate({1}, {1, 2}), DimensionError);
}

TEST_CASE("mean and median") {
    CHECK(mean({1, 2, 6}) == 3.0);
    CHECK(median({5, 1, 3}) == 3.0);
    CHECK(median({4, 1, 3, 2}) == 2.5);
    CHECK(std::isnan(mean({})));
}
