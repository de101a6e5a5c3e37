#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kex/assembly.hpp"
#include "kex/bench.hpp"
#include "kex/instance.hpp"
#include "kex/models.hpp"
#include "kex/oracle.hpp"

namespace {

constexpr int kExitOptimal = 0;
constexpr int kExitTimeLimit = 2;
constexpr int kExitInfeasibleInput = 3;
constexpr int kExitInternal = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

nlohmann::ordered_json exchange_set_json(const kex::ExchangeSet& xs) {
    nlohmann::ordered_json j;
    j["objective"] = xs.objective.to_double();
    j["objective_exact"] = xs.objective.str();
    j["cycles"] = nlohmann::ordered_json::array();
    for (const kex::Cycle& c : xs.cycles) {
        nlohmann::ordered_json e;
        e["vertices"] = c.vertices;
        e["weight"] = c.weight.to_double();
        j["cycles"].push_back(e);
    }
    j["chains"] = nlohmann::ordered_json::array();
    for (const kex::Chain& c : xs.chains) {
        nlohmann::ordered_json e;
        e["ndd"] = c.ndd;
        e["rdps"] = c.rdps;
        e["weight"] = c.weight.to_double();
        j["chains"].push_back(e);
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kidney-exchange optimization toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random instance");
    kex::GenConfig gcfg;
    std::string gen_out = "-";
    gen->add_option("--rdp", gcfg.rdp_count, "number of recipient-donor pairs")->required();
    gen->add_option("--ndd-frac", gcfg.ndd_fraction, "altruistic donors as a fraction of pairs");
    gen->add_option("--density", gcfg.density, "arc probability");
    gen->add_flag("--bands", gcfg.use_bands, "scale density by recipient sensitization bands");
    gen->add_flag("--weighted", gcfg.weighted, "weights uniform on {1..91} instead of 1");
    gen->add_option("--seed", gcfg.seed, "random seed");
    gen->add_option("-o,--output", gen_out, "output file (default stdout)");

    // solve
    auto* solve = app.add_subcommand("solve", "solve an instance with a chosen method");
    std::string solve_in, cycle_name = "cf", chain_name = "cf";
    kex::SolveConfig scfg;
    bool explicit_tau = false;
    std::string ps_name = "bfs";
    bool unbounded_l = false;
    solve->add_option("-i,--input", solve_in, "instance file")->required();
    solve->add_option("--cycle", cycle_name, "cycle model: cf|hcf|ef|eef|pief|none");
    solve->add_option("--chain", chain_name,
                      "chain model: cf|hcf|ef-exp|ef-mtz|eef-exp|eef-mtz|pief|none|hybrid");
    solve->add_option("-K", scfg.K, "cycle length limit");
    solve->add_option("-L", scfg.L, "chain length limit (transplants, terminal included)");
    solve->add_flag("--unbounded-L", unbounded_l, "no chain length limit");
    solve->add_flag("--rcvf", scfg.rcvf, "reduced-cost variable fixing");
    solve->add_flag("--explicit-tau", explicit_tau, "model terminal arcs explicitly");
    solve->add_option("--ps", ps_name, "position sets: bfs|sp");
    solve->add_option("--time-limit", scfg.time_limit_s, "time limit in seconds");
    solve->add_option("--backend", scfg.backend, "solver backend name");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "brute-force reference optimum");
    std::string oracle_in;
    int oK = 3, oL = 3;
    oracle->add_option("-i,--input", oracle_in, "instance file")->required();
    oracle->add_option("-K", oK, "cycle length limit");
    oracle->add_option("-L", oL, "chain length limit");

    // bench
    auto* bench = app.add_subcommand("bench", "run a benchmark manifest");
    std::string bench_manifest, bench_out = "-";
    bench->add_option("-m,--manifest", bench_manifest, "manifest JSON file")->required();
    bench->add_option("-o,--output", bench_out, "CSV output file (default stdout)");

    // heatmap
    auto* heat = app.add_subcommand("heatmap", "aggregate a benchmark CSV into matrices");
    std::string heat_in, heat_out = "-";
    heat->add_option("-i,--input", heat_in, "benchmark CSV")->required();
    heat->add_option("-o,--output", heat_out, "JSON output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            write_file(gen_out, kex::serialize_instance(kex::generate_instance(gcfg)));
            return kExitOptimal;
        }
        if (solve->parsed()) {
            kex::Instance inst;
            try {
                inst = kex::parse_instance(read_file(solve_in));
            } catch (const std::exception& e) {
                std::cerr << "input error: " << e.what() << "\n";
                return kExitInfeasibleInput;
            }
            scfg.tau = explicit_tau ? kex::TauMode::Explicit : kex::TauMode::Implicit;
            scfg.ps = ps_name == "sp" ? kex::PositionMethod::ShortestPath
                                      : kex::PositionMethod::Bfs;
            if (unbounded_l) scfg.L = kex::kUnboundedL;
            const kex::CycleModel cm = kex::cycle_model_from_string(cycle_name);
            const kex::ChainModel chm = kex::chain_model_from_string(chain_name);
            const kex::SolveOutcome out = kex::solve_method(inst, cm, chm, scfg);
            nlohmann::ordered_json j;
            j["status"] = out.status == kex::IpStatus::Optimal ? "OPTIMAL"
                          : out.status == kex::IpStatus::TimeLimit ? "TIME_LIMIT"
                          : out.status == kex::IpStatus::Infeasible ? "INFEASIBLE"
                                                                    : "OTHER";
            j["solution"] = exchange_set_json(out.solution);
            j["stats"]["vars"] = out.stats.vars;
            j["stats"]["constraints"] = out.stats.constraints;
            j["stats"]["lp_value"] = out.lp_objective;
            j["stats"]["best_bound"] = out.best_bound;
            j["stats"]["nodes"] = out.nodes;
            j["stats"]["lazy_cuts"] = out.lazy_added;
            j["stats"]["time_s"] = out.wall_time_s;
            if (scfg.rcvf) {
                j["stats"]["rcvf_iterations"] = out.rcvf_iterations;
                j["stats"]["rcvf_deactivated"] = out.rcvf_deactivated;
            }
            std::cout << j.dump(2) << "\n";
            if (out.status == kex::IpStatus::TimeLimit) return kExitTimeLimit;
            if (out.status == kex::IpStatus::Optimal) return kExitOptimal;
            return kExitInternal;
        }
        if (oracle->parsed()) {
            kex::Instance inst;
            try {
                inst = kex::parse_instance(read_file(oracle_in));
            } catch (const std::exception& e) {
                std::cerr << "input error: " << e.what() << "\n";
                return kExitInfeasibleInput;
            }
            const kex::OracleResult res = kex::brute_force_optimum(inst, oK, oL);
            nlohmann::ordered_json j;
            j["value"] = res.value.to_double();
            j["value_exact"] = res.value.str();
            j["explored"] = res.explored;
            j["solution"] = exchange_set_json(res.best);
            std::cout << j.dump(2) << "\n";
            return kExitOptimal;
        }
        if (bench->parsed()) {
            write_file(bench_out, kex::run_benchmark(read_file(bench_manifest)));
            return kExitOptimal;
        }
        if (heat->parsed()) {
            write_file(heat_out, kex::emit_heatmap(read_file(heat_in)));
            return kExitOptimal;
        }
    } catch (const kex::InstanceError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInfeasibleInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
