#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kex/assembly.hpp"
#include "kex/bench.hpp"
#include "kex/instance.hpp"
#include "kex/models.hpp"
#include "kex/oracle.hpp"

namespace py = pybind11;

namespace {

py::dict exchange_set_dict(const kex::ExchangeSet& xs) {
    py::list cycles, chains;
    for (const kex::Cycle& c : xs.cycles) {
        py::dict e;
        e["vertices"] = c.vertices;
        e["weight"] = c.weight.to_double();
        cycles.append(e);
    }
    for (const kex::Chain& c : xs.chains) {
        py::dict e;
        e["ndd"] = c.ndd;
        e["rdps"] = c.rdps;
        e["weight"] = c.weight.to_double();
        chains.append(e);
    }
    py::dict d;
    d["objective"] = xs.objective.to_double();
    d["objective_exact"] = xs.objective.str();
    d["cycles"] = cycles;
    d["chains"] = chains;
    return d;
}

}  // namespace

PYBIND11_MODULE(kexpy, m) {
    m.doc() = "kidney-exchange optimization toolkit";

    m.def(
        "generate",
        [](int rdp, double ndd_frac, double density, bool weighted, std::uint64_t seed,
           bool bands) {
            kex::GenConfig cfg;
            cfg.rdp_count = rdp;
            cfg.ndd_fraction = ndd_frac;
            cfg.density = density;
            cfg.weighted = weighted;
            cfg.seed = seed;
            cfg.use_bands = bands;
            return kex::serialize_instance(kex::generate_instance(cfg));
        },
        py::arg("rdp"), py::arg("ndd_frac") = 0.0, py::arg("density") = 0.5,
        py::arg("weighted") = false, py::arg("seed") = 0, py::arg("bands") = false,
        "Generate a random instance; returns its JSON text.");

    m.def(
        "solve",
        [](const std::string& instance_json, const std::string& cycle, const std::string& chain,
           int K, int L, bool rcvf, bool explicit_tau, const std::string& ps,
           double time_limit_s) {
            const kex::Instance inst = kex::parse_instance(instance_json);
            kex::SolveConfig cfg;
            cfg.K = K;
            cfg.L = L;
            cfg.rcvf = rcvf;
            cfg.tau = explicit_tau ? kex::TauMode::Explicit : kex::TauMode::Implicit;
            cfg.ps = ps == "sp" ? kex::PositionMethod::ShortestPath : kex::PositionMethod::Bfs;
            cfg.time_limit_s = time_limit_s;
            const kex::SolveOutcome out =
                kex::solve_method(inst, kex::cycle_model_from_string(cycle),
                                  kex::chain_model_from_string(chain), cfg);
            py::dict d;
            d["status"] = out.status == kex::IpStatus::Optimal ? "OPTIMAL"
                          : out.status == kex::IpStatus::TimeLimit ? "TIME_LIMIT"
                                                                   : "OTHER";
            d["solution"] = exchange_set_dict(out.solution);
            d["lp_value"] = out.lp_objective;
            d["vars"] = out.stats.vars;
            d["constraints"] = out.stats.constraints;
            d["lazy_cuts"] = out.lazy_added;
            d["nodes"] = out.nodes;
            return d;
        },
        py::arg("instance_json"), py::arg("cycle") = "cf", py::arg("chain") = "cf",
        py::arg("K") = 3, py::arg("L") = 3, py::arg("rcvf") = false,
        py::arg("explicit_tau") = false, py::arg("ps") = "bfs",
        py::arg("time_limit_s") = 3600.0,
        "Solve an instance (JSON text) with the chosen cycle/chain models.");

    m.def(
        "oracle",
        [](const std::string& instance_json, int K, int L) {
            const kex::OracleResult res =
                kex::brute_force_optimum(kex::parse_instance(instance_json), K, L);
            py::dict d;
            d["value"] = res.value.to_double();
            d["value_exact"] = res.value.str();
            d["explored"] = res.explored;
            d["solution"] = exchange_set_dict(res.best);
            return d;
        },
        py::arg("instance_json"), py::arg("K") = 3, py::arg("L") = 3,
        "Brute-force reference optimum for a small instance.");

    m.def("run_benchmark", &kex::run_benchmark, py::arg("manifest_json"),
          "Run a benchmark manifest; returns CSV text.");
    m.def("emit_heatmap", &kex::emit_heatmap, py::arg("csv_text"),
          "Aggregate benchmark CSV into model-matrix JSON.");
}
