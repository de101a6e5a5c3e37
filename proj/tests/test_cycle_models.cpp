#include <doctest.h>

#include "fixture.hpp"
#include "kex/assembly.hpp"
#include "kex/bench.hpp"
#include "kex/models.hpp"
#include "kex/oracle.hpp"

using namespace kex;

namespace {

int binary_count(const ModelBuild& b) {
    int n = 0;
    for (const Variable& v : b.model.vars)
        if (v.kind == VarKind::Binary) ++n;
    return n;
}

double cycles_only_optimum(const Instance& inst, CycleModel cm, int K) {
    SolveConfig cfg;
    cfg.K = K;
    cfg.L = 0;
    const SolveOutcome out = solve_method(inst, cm, ChainModel::None, cfg);
    REQUIRE(out.status == IpStatus::Optimal);
    return out.solution.objective.to_double();
}

}  // namespace

TEST_CASE("golden variable counts per cycle formulation") {
    const Instance inst = golden_instance();
    CHECK(binary_count(build_cf_cycle(inst, 4)) == 3);
    CHECK(binary_count(build_cf_cycle(inst, 2)) == 1);
    CHECK(binary_count(build_cf_cycle(inst, 0)) == 0);
    CHECK(binary_count(build_hcf_cycle(inst, 4)) == 6);  // identity order
    // One variable per pair-to-pair arc; the graph reduction then prunes
    // (1,2), which lies on no cycle of length at most 3.
    CHECK(build_ef_cycle(inst, 3).stats.pre_reduction_vars == 6);
    CHECK(binary_count(build_ef_cycle(inst, 3)) == 5);
    CHECK(build_eef_cycle(inst, 4).stats.pre_reduction_vars == 10);
    CHECK(binary_count(build_pief_cycle(inst, 4, PositionMethod::Bfs)) == 9);
}

TEST_CASE("degenerate graphs produce empty cycle models") {
    const Instance lonely = parse_instance(R"({"rdp_count":1,"ndd_count":0,"arcs":[]})");
    CHECK(binary_count(build_cf_cycle(lonely, 3)) == 0);
    CHECK(binary_count(build_hcf_cycle(lonely, 3)) == 0);
    CHECK(binary_count(build_eef_cycle(lonely, 3)) == 0);
    const Instance path = parse_instance(R"({"rdp_count":3,"ndd_count":0,
        "arcs":[{"from":1,"to":2},{"from":2,"to":3}]})");
    CHECK(binary_count(build_hcf_cycle(path, 2)) == 0);
}

TEST_CASE("only the two-cycle exists at K=2 and scores 2") {
    const Instance inst = golden_instance_zero_tau();
    const ModelBuild b = build_cf_cycle(inst, 2);
    REQUIRE(binary_count(b) == 1);
    const IpResult ip = solve_ip(b.model);
    CHECK(ip.objective == doctest::Approx(2.0));
}

TEST_CASE("all cycle formulations match the cycles-only oracle") {
    GenConfig cfg;
    cfg.rdp_count = 9;
    cfg.density = 0.4;
    for (std::uint64_t seed : {201ull, 202ull, 203ull}) {
        cfg.seed = seed;
        cfg.weighted = seed % 2;
        const Instance inst = generate_instance(cfg);
        for (int K = 2; K <= 5; ++K) {
            const double want = brute_force_optimum(inst, K, 0).value.to_double();
            for (CycleModel cm : {CycleModel::Cf, CycleModel::Hcf, CycleModel::Ef,
                                  CycleModel::Eef, CycleModel::Pief})
                CHECK(cycles_only_optimum(inst, cm, K) == doctest::Approx(want));
        }
    }
}

TEST_CASE("relaxation strength ordering across cycle formulations") {
    GenConfig cfg;
    cfg.rdp_count = 9;
    cfg.density = 0.45;
    cfg.weighted = true;
    for (std::uint64_t seed : {211ull, 212ull, 213ull, 214ull}) {
        cfg.seed = seed;
        const Instance inst = generate_instance(cfg);
        const int K = 3;
        SolveConfig scfg;
        scfg.K = K;
        scfg.L = 0;
        auto lp_of = [&](CycleModel cm) {
            const ReindexResult rx = reindex(inst, preferred_order(cm));
            const ModelBuild b = build_method(rx.instance, cm, ChainModel::None, scfg);
            const LpResult lp = solve_lp(b.model);
            REQUIRE(lp.status == LpStatus::Optimal);
            return lp.objective;
        };
        const double cf = lp_of(CycleModel::Cf);
        CHECK(lp_of(CycleModel::Hcf) == doctest::Approx(cf).epsilon(1e-6));
        CHECK(lp_of(CycleModel::Pief) == doctest::Approx(cf).epsilon(1e-6));
        CHECK(cf <= lp_of(CycleModel::Ef) + 1e-6);
        CHECK(cf <= lp_of(CycleModel::Eef) + 1e-6);
    }
}

TEST_CASE("extracted cycles are vertex-disjoint and within the limit") {
    GenConfig cfg;
    cfg.rdp_count = 10;
    cfg.density = 0.4;
    cfg.seed = 221;
    const Instance inst = generate_instance(cfg);
    for (CycleModel cm : {CycleModel::Cf, CycleModel::Hcf, CycleModel::Ef, CycleModel::Eef,
                          CycleModel::Pief}) {
        SolveConfig scfg;
        scfg.K = 4;
        scfg.L = 0;
        const SolveOutcome out = solve_method(inst, cm, ChainModel::None, scfg);
        REQUIRE(out.status == IpStatus::Optimal);
        const ValidationReport rep = validate_solution(inst, out.solution, 4, 0);
        CHECK(rep.valid);
    }
}

TEST_CASE("arc-flow cycle model separates long cycles lazily") {
    // On the golden graph at K=3 the 4-cycle relaxation must be cut away.
    const Instance inst = golden_instance_zero_tau();
    SolveConfig scfg;
    scfg.K = 3;
    scfg.L = 0;
    const SolveOutcome out = solve_method(inst, CycleModel::Ef, ChainModel::None, scfg);
    REQUIRE(out.status == IpStatus::Optimal);
    CHECK(out.solution.objective == Rational(3));  // best is the 3-cycle
    for (const Cycle& c : out.solution.cycles) CHECK(c.vertices.size() <= 3);
}

TEST_CASE("no long-cycle cuts are needed once K covers the graph") {
    GenConfig cfg;
    cfg.rdp_count = 6;
    cfg.density = 0.5;
    cfg.seed = 231;
    const Instance inst = generate_instance(cfg);
    SolveConfig scfg;
    scfg.K = inst.rdp_count();
    scfg.L = 0;
    const SolveOutcome out = solve_method(inst, CycleModel::Ef, ChainModel::None, scfg);
    REQUIRE(out.status == IpStatus::Optimal);
    CHECK(out.lazy_added == 0);
    CHECK(out.solution.objective == brute_force_optimum(inst, inst.rdp_count(), 0).value);
}
