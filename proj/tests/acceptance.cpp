// Acceptance checks for the exchange-optimization toolkit.
//
// Each numbered criterion prints exactly one PASS/FAIL line. The process
// exits nonzero if any criterion fails. Tolerances are pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kex/assembly.hpp"
#include "kex/bench.hpp"
#include "kex/enumeration.hpp"
#include "kex/models.hpp"
#include "kex/oracle.hpp"
#include "kex/reduction.hpp"

#include "fixture.hpp"

using namespace kex;
using nlohmann::json;

namespace {

constexpr double kLpTol = 1e-6;       // LP relaxation comparisons
constexpr double kChi2Crit = 124.116; // 99th percentile, chi-squared, 90 df

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct Criterion {
    int id;
    std::string summary;
    bool pass = true;
    std::vector<std::string> notes;

    void fail(const std::string& why) {
        pass = false;
        notes.push_back(why);
    }
    void require(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
};

int binary_count(const ModelBuild& b) {
    int n = 0;
    for (const Variable& v : b.model.vars)
        if (v.kind == VarKind::Binary) ++n;
    return n;
}

int continuous_count(const ModelBuild& b) {
    int n = 0;
    for (const Variable& v : b.model.vars)
        if (v.kind == VarKind::Continuous) ++n;
    return n;
}

const std::vector<CycleModel> kCycleModels{CycleModel::Cf, CycleModel::Hcf, CycleModel::Ef,
                                           CycleModel::Eef, CycleModel::Pief};
const std::vector<ChainModel> kChainModels{ChainModel::Cf,     ChainModel::Hcf,
                                           ChainModel::EfExp,  ChainModel::EfMtz,
                                           ChainModel::EefExp, ChainModel::EefMtz,
                                           ChainModel::Pief};

std::vector<std::pair<CycleModel, ChainModel>> all_methods() {
    std::vector<std::pair<CycleModel, ChainModel>> out;
    for (CycleModel cm : kCycleModels)
        for (ChainModel chm : kChainModels) out.emplace_back(cm, chm);
    out.emplace_back(CycleModel::None, ChainModel::Hybrid);
    return out;
}

// ---------------------------------------------------------------------------
// 1. Golden example, optimum: 35 combinations + hybrid + 6 variable-fixing
//    variants all return exactly 6 at K=2, L=3; total runtime < 10 s.
Criterion criterion1() {
    Criterion c{1, "golden example: 42 method runs all return objective 6 in < 10 s"};
    const Instance inst = golden_instance();
    const double t0 = now_s();
    int runs = 0;
    auto run = [&](CycleModel cm, ChainModel chm, bool rcvf) {
        SolveConfig cfg;
        cfg.K = 2;
        cfg.L = 3;
        cfg.rcvf = rcvf;
        const SolveOutcome out = solve_method(inst, cm, chm, cfg);
        ++runs;
        if (out.status != IpStatus::Optimal || out.solution.objective != Rational(6))
            c.fail(to_string(cm) + "+" + to_string(chm) + (rcvf ? " (rcvf)" : "") +
                   " did not return 6");
    };
    for (auto [cm, chm] : all_methods()) run(cm, chm, false);
    run(CycleModel::Cf, ChainModel::Cf, true);
    run(CycleModel::Hcf, ChainModel::Hcf, true);
    run(CycleModel::Ef, ChainModel::EfExp, true);
    run(CycleModel::Eef, ChainModel::EefMtz, true);
    run(CycleModel::Pief, ChainModel::Pief, true);
    run(CycleModel::None, ChainModel::Hybrid, true);
    const double dt = now_s() - t0;
    c.require(runs == 42, "expected 42 runs, made " + std::to_string(runs));
    c.require(dt < 10.0, "runtime " + std::to_string(dt) + " s exceeds 10 s");
    return c;
}

// ---------------------------------------------------------------------------
// 2. Golden example, exact model sizes. Zero tolerance. Arc-style counts are
//    taken before distance pruning (stats.pre_reduction_vars) where the target
//    figure counts raw arc variables.
Criterion criterion2() {
    Criterion c{2, "golden example: exact variable counts per formulation"};
    const Instance inst = golden_instance();
    auto expect = [&](const std::string& what, int got, int want) {
        if (got != want)
            c.fail(what + ": got " + std::to_string(got) + ", want " + std::to_string(want));
    };
    expect("cycle list K=4", binary_count(build_cf_cycle(inst, 4)), 3);
    expect("chain list L=3", binary_count(build_cf_chain(inst, 3, TauMode::Explicit)), 7);
    expect("half-cycle K=4", binary_count(build_hcf_cycle(inst, 4)), 6);
    // Honest failure: the faithful half-chain split (first halves carry at
    // most floor(L/2)=2 pairs, second halves at most ceil(L/2)=2 plus the
    // terminal donation) yields 5 firsts + 8 seconds + 2 length-one chains
    // = 15 variables. Reaching the target figure of 17 would require
    // admitting arrangements that exceed the half-length caps, which the
    // enumeration correctly rejects; the model is not padded to match.
    expect("half-chain L=4 (target counts two arrangements beyond the length caps)",
           binary_count(build_hcf_chain(inst, 4, TauMode::Explicit)), 17);
    expect("cycle arc K=3 (pre-reduction)", build_ef_cycle(inst, 3).stats.pre_reduction_vars,
           6);
    expect("chain arc L=4",
           binary_count(build_ef_chain_exp(inst, 4, TauMode::Explicit)), 14);
    const ModelBuild mtz = build_ef_chain_mtz(inst, 4, TauMode::Explicit);
    expect("chain arc L=4 (timestamp rows)", binary_count(mtz), 14);
    expect("chain arc L=4 timestamps", continuous_count(mtz), 4);
    expect("cycle subgraph-arc K=4 (pre-reduction)",
           build_eef_cycle(inst, 4).stats.pre_reduction_vars, 10);
    expect("chain subgraph-arc L=4 (pre-reduction)",
           build_eef_chain_exp(inst, 4, TauMode::Explicit).stats.pre_reduction_vars, 24);
    expect("cycle position-indexed K=4",
           binary_count(build_pief_cycle(inst, 4, PositionMethod::Bfs)), 9);
    expect("chain position-indexed L=4",
           binary_count(build_pief_chain(inst, 4, TauMode::Explicit, PositionMethod::Bfs)),
           20);
    return c;
}

// ---------------------------------------------------------------------------
// 3. Position sets on the 3-cycle graph at K=4, both computation methods.
Criterion criterion3() {
    Criterion c{3, "3-cycle position sets: shortest-path {1},{2,3},{3,4}; BFS {1},{2},{3}"};
    const Instance tri = parse_instance(R"({"rdp_count":3,"ndd_count":0,
        "arcs":[{"from":1,"to":2},{"from":2,"to":3},{"from":3,"to":1}]})");
    auto sets_of = [&](PositionMethod m) {
        std::map<std::pair<int, int>, std::vector<int>> sets;
        for (const SubgraphPositionSets& copy : position_sets_cycle(tri, 4, m))
            if (copy.root == 1)
                for (const PositionedArc& a : copy.arcs) sets[{a.from, a.to}] = a.positions;
        return sets;
    };
    auto sp = sets_of(PositionMethod::ShortestPath);
    c.require(sp[{1, 2}] == std::vector<int>{1}, "shortest-path K(1,2) != {1}");
    c.require(sp[{2, 3}] == std::vector<int>{2, 3}, "shortest-path K(2,3) != {2,3}");
    c.require(sp[{3, 1}] == std::vector<int>{3, 4}, "shortest-path K(3,1) != {3,4}");
    auto bfs = sets_of(PositionMethod::Bfs);
    c.require(bfs[{1, 2}] == std::vector<int>{1}, "BFS K(1,2) != {1}");
    c.require(bfs[{2, 3}] == std::vector<int>{2}, "BFS K(2,3) != {2}");
    c.require(bfs[{3, 1}] == std::vector<int>{3}, "BFS K(3,1) != {3}");
    return c;
}

// ---------------------------------------------------------------------------
// 4 + 5. Oracle-equivalence sweep over 200 seeded instances, plus LP
//    relaxation properties on the same sweep.
struct SweepResults {
    Criterion c4{4, "oracle sweep: 36 methods x 200 instances, exact match, < 30 min"};
    Criterion c5{5, "LP orderings and bounds hold across the sweep (tol 1e-6)"};
};

SweepResults run_sweep() {
    SweepResults res;
    const double t0 = now_s();
    const auto methods = all_methods();
    for (int i = 0; i < 200; ++i) {
        GenConfig gen;
        gen.rdp_count = 6 + i % 7;
        gen.ndd_fraction = static_cast<double>(i % 4) / gen.rdp_count;
        gen.weighted = (i / 2) % 2;
        gen.seed = 1000 + static_cast<std::uint64_t>(i);
        const int K = 2 + i % 3;
        const int lmode = (i / 3) % 3;
        const int L = lmode == 0 ? K : (lmode == 1 ? K + 1 : 2 * K);
        // Long chains in dense graphs defeat exhaustive search; pair the
        // deepest chain bound with the sparse density so the reference
        // enumeration stays exact and fast.
        gen.density = (i % 2 == 0 || (K >= 4 && L >= 2 * K)) ? 0.2 : 0.5;
        const Instance inst = generate_instance(gen);
        const Rational opt = brute_force_optimum(inst, K, L).value;

        std::map<std::pair<CycleModel, ChainModel>, double> lp;
        for (auto [cm, chm] : methods) {
            SolveConfig cfg;
            cfg.K = K;
            cfg.L = L;
            const SolveOutcome out = solve_method(inst, cm, chm, cfg);
            const std::string name = to_string(cm) + "+" + to_string(chm);
            if (out.status != IpStatus::Optimal || out.solution.objective != opt) {
                res.c4.fail("instance " + std::to_string(i) + " " + name +
                            " missed the reference optimum");
                continue;
            }
            lp[{cm, chm}] = out.lp_objective;
            res.c5.require(out.lp_objective >= opt.to_double() - kLpTol,
                           "instance " + std::to_string(i) + " " + name +
                               " LP below the integer optimum");
        }

        // Cycles-only relaxation strengths, on each model's preferred order.
        std::map<CycleModel, double> clp;
        for (CycleModel cm : kCycleModels) {
            const ReindexResult rx = reindex(inst, preferred_order(cm));
            SolveConfig cfg;
            cfg.K = K;
            cfg.L = 0;
            const LpResult r = solve_lp(build_method(rx.instance, cm, ChainModel::None, cfg).model);
            if (r.status != LpStatus::Optimal) {
                res.c5.fail("instance " + std::to_string(i) + " cycles-only LP not optimal");
                return res;
            }
            clp[cm] = r.objective;
        }
        const std::string tag = "instance " + std::to_string(i) + ": ";
        res.c5.require(std::fabs(clp[CycleModel::Cf] - clp[CycleModel::Hcf]) <= kLpTol,
                       tag + "cycle-list LP != half-cycle LP");
        res.c5.require(std::fabs(clp[CycleModel::Cf] - clp[CycleModel::Pief]) <= kLpTol,
                       tag + "cycle-list LP != position-indexed LP");
        res.c5.require(clp[CycleModel::Cf] <= clp[CycleModel::Ef] + kLpTol,
                       tag + "cycle-list LP above arc LP");
        res.c5.require(clp[CycleModel::Cf] <= clp[CycleModel::Eef] + kLpTol,
                       tag + "cycle-list LP above subgraph-arc LP");
        for (CycleModel cm : kCycleModels)
            res.c5.require(lp[{cm, ChainModel::Cf}] <= lp[{cm, ChainModel::Pief}] + kLpTol,
                           tag + to_string(cm) +
                               ": chain-list LP above position-indexed chain LP");
    }
    const double dt = now_s() - t0;
    res.c4.require(dt < 1800.0, "sweep took " + std::to_string(dt) + " s (>= 30 min)");
    res.c4.notes.push_back("sweep wall time " + std::to_string(dt) + " s");
    return res;
}

// ---------------------------------------------------------------------------
// 6. Invariance suites, 100 seeded instances each: graph reduction,
//    terminal-arc mode, vertex reindexing, position-set method, and the
//    unbounded chain limit all leave the optimum unchanged.
Criterion criterion6() {
    Criterion c{6, "five invariance suites x 100 instances leave the optimum unchanged"};
    for (int i = 0; i < 100; ++i) {
        GenConfig gen;
        gen.rdp_count = 6 + i % 4;
        gen.ndd_fraction = 0.25;
        gen.density = 0.3 + 0.15 * (i % 2);
        gen.weighted = i % 2;
        gen.seed = 5000 + static_cast<std::uint64_t>(i);
        const Instance inst = generate_instance(gen);
        const std::string tag = "instance " + std::to_string(i) + ": ";
        SolveConfig cfg;
        cfg.K = 3;
        cfg.L = 3;

        const SolveOutcome base = solve_method(inst, CycleModel::Pief, ChainModel::Pief, cfg);
        if (base.status != IpStatus::Optimal) {
            c.fail(tag + "baseline solve not optimal");
            continue;
        }
        const Rational opt = base.solution.objective;

        // (a) distance-based arc pruning keeps the optimum.
        {
            const ReducedGraph rg = reduce_for_model(inst, ReductionFamily::EfHybrid, 3, 3);
            std::vector<Arc> arcs;
            std::vector<Rational> weights;
            for (std::size_t a = 0; a < inst.arcs().size(); ++a)
                if (rg.arc_kept[a]) {
                    arcs.push_back(inst.arcs()[a]);
                    weights.push_back(inst.weights()[a]);
                }
            const Instance pruned(inst.rdp_count(), inst.ndd_count(), arcs, weights,
                                  inst.tau_weights());
            const SolveOutcome out =
                solve_method(pruned, CycleModel::Pief, ChainModel::Pief, cfg);
            if (out.status != IpStatus::Optimal || out.solution.objective != opt)
                c.fail(tag + "arc pruning changed the optimum");
        }
        // (b) implicit vs explicit terminal handling, with live terminal weights.
        {
            std::vector<Rational> tw;
            for (int v = 1; v <= inst.vertex_count(); ++v) tw.push_back(Rational(1));
            const Instance wt(inst.rdp_count(), inst.ndd_count(), inst.arcs(),
                              inst.weights(), tw);
            SolveConfig ecfg = cfg;
            ecfg.tau = TauMode::Explicit;
            const SolveOutcome e = solve_method(wt, CycleModel::Cf, ChainModel::Pief, ecfg);
            const SolveOutcome im = solve_method(wt, CycleModel::Cf, ChainModel::Pief, cfg);
            if (e.status != IpStatus::Optimal || im.status != IpStatus::Optimal ||
                e.solution.objective != im.solution.objective)
                c.fail(tag + "terminal-arc mode changed the optimum");
        }
        // (c) vertex reindexing.
        for (VertexOrder ord : {VertexOrder::DegreeDesc, VertexOrder::DegreeAsc}) {
            const SolveOutcome out = solve_method(reindex(inst, ord).instance,
                                                  CycleModel::Pief, ChainModel::Pief, cfg);
            if (out.status != IpStatus::Optimal || out.solution.objective != opt)
                c.fail(tag + "reindexing changed the optimum");
        }
        // (d) BFS vs shortest-path position sets.
        {
            SolveConfig sp = cfg;
            sp.ps = PositionMethod::ShortestPath;
            const SolveOutcome out = solve_method(inst, CycleModel::Pief, ChainModel::Pief, sp);
            if (out.status != IpStatus::Optimal || out.solution.objective != opt)
                c.fail(tag + "position-set method changed the optimum");
        }
        // (e) unbounded chain limit vs the explicit maximum |R|+1.
        {
            SolveConfig unb = cfg;
            unb.L = kUnboundedL;
            SolveConfig capped = cfg;
            capped.L = inst.rdp_count() + 1;
            const SolveOutcome a = solve_method(inst, CycleModel::Cf, ChainModel::Cf, unb);
            const SolveOutcome b = solve_method(inst, CycleModel::Cf, ChainModel::Cf, capped);
            if (a.status != IpStatus::Optimal || b.status != IpStatus::Optimal ||
                a.solution.objective != b.solution.objective)
                c.fail(tag + "unbounded chain limit changed the optimum");
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// 7. Reduced-cost variable fixing: optimum identical to the plain solve on
//    50 unweighted + 50 weighted instances; one iteration suffices whenever
//    the rounded root relaxation already equals the optimum.
Criterion criterion7() {
    Criterion c{7, "variable fixing matches plain solves (50+50); 1 iteration when "
                   "floor(root LP) = optimum"};
    for (int i = 0; i < 100; ++i) {
        GenConfig gen;
        gen.rdp_count = 10 + i % 11;
        gen.ndd_fraction = 0.2;
        gen.density = 0.2;
        gen.weighted = i >= 50;
        gen.seed = 7000 + static_cast<std::uint64_t>(i);
        const Instance inst = generate_instance(gen);
        SolveConfig plain;
        plain.K = 3;
        plain.L = 4;
        SolveConfig rcvf = plain;
        rcvf.rcvf = true;
        const SolveOutcome p = solve_method(inst, CycleModel::Pief, ChainModel::Pief, plain);
        const SolveOutcome r = solve_method(inst, CycleModel::Pief, ChainModel::Pief, rcvf);
        const std::string tag = "instance " + std::to_string(i) + ": ";
        if (p.status != IpStatus::Optimal || r.status != IpStatus::Optimal) {
            c.fail(tag + "solve not optimal");
            continue;
        }
        if (p.solution.objective != r.solution.objective)
            c.fail(tag + "variable fixing changed the optimum");
        if (!gen.weighted &&
            std::floor(r.lp_objective + kLpTol) ==
                r.solution.objective.to_double() &&
            r.rcvf_iterations != 1)
            c.fail(tag + "expected a single fixing iteration, used " +
                   std::to_string(r.rcvf_iterations));
    }
    return c;
}

// ---------------------------------------------------------------------------
// 8. Lazy-cut audit: every generated cut is violated by the incumbent that
//    triggered it, and the final incumbent violates no separator.
Criterion criterion8() {
    Criterion c{8, "every lazy cut is violated when added; final incumbents violate none"};
    auto audit = [&](const Instance& inst, CycleModel cm, ChainModel chm, int K, int L,
                     const std::string& tag) {
        const ReindexResult rx = reindex(inst, preferred_order(cm));
        SolveConfig cfg;
        cfg.K = K;
        cfg.L = L;
        cfg.tau = TauMode::Explicit;
        const ModelBuild build = build_method(rx.instance, cm, chm, cfg);
        IpConfig ic;
        ic.granularity = 1.0;
        bool cuts_ok = true;
        ic.lazy_separator = [&](const std::vector<double>& x) {
            std::vector<ConstraintRow> cuts = separate(rx.instance, build, x);
            for (const ConstraintRow& row : cuts) {
                double lhs = 0.0;
                for (auto [v, coef] : row.terms) lhs += coef * x[v];
                const bool violated = row.sense == Sense::Le   ? lhs > row.rhs + kLpTol
                                      : row.sense == Sense::Ge ? lhs < row.rhs - kLpTol
                                                               : std::fabs(lhs - row.rhs) > kLpTol;
                if (!violated) cuts_ok = false;
            }
            return cuts;
        };
        const IpResult res = solve_ip(build.model, ic);
        c.require(res.status == IpStatus::Optimal, tag + ": solve not optimal");
        c.require(cuts_ok, tag + ": a generated cut was not violated by its incumbent");
        if (res.status == IpStatus::Optimal)
            c.require(separate(rx.instance, build, res.x).empty(),
                      tag + ": final incumbent still violates a separator");
    };
    audit(golden_instance_zero_tau(), CycleModel::Ef, ChainModel::EfExp, 3, 4, "golden");
    for (int i = 0; i < 10; ++i) {
        GenConfig gen;
        gen.rdp_count = 8 + i % 3;
        gen.ndd_fraction = 0.25;
        gen.density = 0.4;
        gen.seed = 8000 + static_cast<std::uint64_t>(i);
        const Instance inst = generate_instance(gen);
        const std::string tag = "instance " + std::to_string(i);
        audit(inst, CycleModel::Ef, ChainModel::EfExp, 3, 3, tag + " arc");
        audit(inst, CycleModel::Cf, ChainModel::EefExp, 3, 3, tag + " subgraph-arc");
        audit(inst, CycleModel::None, ChainModel::Hybrid, 3, 3, tag + " hybrid");
    }
    return c;
}

// ---------------------------------------------------------------------------
// 9. Heatmap emission. Full-scale wall-clock benchmark tables (thousands of
//    large instances on commercial solvers) are hardware- and solver-bound
//    and are NOT reproduced here; criteria 1-8 substitute property-based
//    acceptance. The harness must still aggregate any completed sweep into
//    the cycle-by-chain heatmap with AVG margins.
Criterion criterion9() {
    Criterion c{9, "benchmark sweeps aggregate into the 5x7 heatmap with AVG margins"};
    json manifest;
    manifest["K"] = 3;
    manifest["L"] = 3;
    manifest["instances"] = json::array();
    manifest["instances"].push_back(
        {{"id", "golden"}, {"data", json::parse(serialize_instance(golden_instance()))}});
    for (int i = 0; i < 2; ++i) {
        GenConfig gen;
        gen.rdp_count = 7;
        gen.ndd_fraction = 0.3;
        gen.density = 0.4;
        gen.seed = 9000 + static_cast<std::uint64_t>(i);
        manifest["instances"].push_back(
            {{"id", "gen" + std::to_string(i)},
             {"data", json::parse(serialize_instance(generate_instance(gen)))}});
    }
    manifest["methods"] = json::array();
    for (CycleModel cm : kCycleModels)
        for (ChainModel chm : kChainModels)
            manifest["methods"].push_back({{"cycle", to_string(cm)}, {"chain", to_string(chm)}});
    const std::string csv = run_benchmark(manifest.dump());
    const json heat = json::parse(emit_heatmap(csv));
    c.require(heat.at("rows").size() == 5 && heat.at("cols").size() == 7,
              "heatmap is not the 5x7 cycle-by-chain grid");
    for (const char* metric : {"n_opt", "mean_time", "mean_vars", "mean_cons", "mean_lp_gap"}) {
        const json& m = heat.at("metrics").at(metric);
        c.require(m.contains("cells") && m.contains("row_avg") && m.contains("col_avg") &&
                      m.contains("avg"),
                  std::string(metric) + " lacks AVG margins");
    }
    c.require(heat.at("missing_cells").empty(), "completed sweep reported missing cells");
    const json& nopt = heat.at("metrics").at("n_opt");
    for (const json& row : nopt.at("cells"))
        for (const json& cell : row)
            c.require(cell.is_number() && cell.get<double>() == 3.0,
                      "a method failed to prove optimality on all three instances");
    return c;
}

// ---------------------------------------------------------------------------
// 10. Generator statistics: weights uniform on {1..91} at the 99% chi-squared
//     level over >= 10^4 arcs, terminal weights identically zero, and
//     same-seed byte-identical output.
Criterion criterion10() {
    Criterion c{10, "generator: weights uniform on {1..91}, zero terminal weights, "
                    "seed-deterministic"};
    GenConfig gen;
    gen.rdp_count = 105;
    gen.density = 0.92;
    gen.weighted = true;
    gen.seed = 424242;
    const Instance inst = generate_instance(gen);
    c.require(inst.arcs().size() >= 10000,
              "sample has only " + std::to_string(inst.arcs().size()) + " arcs");
    std::vector<int> hist(91, 0);
    bool in_range = true;
    for (const Rational& w : inst.weights()) {
        const int v = static_cast<int>(w.to_double());
        if (v < 1 || v > 91 || w != Rational(v)) {
            in_range = false;
            break;
        }
        ++hist[v - 1];
    }
    c.require(in_range, "a weight fell outside {1..91}");
    if (in_range) {
        const double expect = static_cast<double>(inst.arcs().size()) / 91.0;
        double chi2 = 0.0;
        for (int h : hist) chi2 += (h - expect) * (h - expect) / expect;
        c.require(chi2 < kChi2Crit, "chi-squared " + std::to_string(chi2) +
                                        " exceeds the 99% critical value " +
                                        std::to_string(kChi2Crit));
    }
    for (const Rational& t : inst.tau_weights())
        if (t != Rational(0)) {
            c.fail("a terminal weight is nonzero");
            break;
        }
    c.require(serialize_instance(generate_instance(gen)) == serialize_instance(inst),
              "same seed produced different bytes");
    return c;
}

void report(const Criterion& c, int& failures) {
    std::printf("[%s] criterion %d: %s\n", c.pass ? "PASS" : "FAIL", c.id,
                c.summary.c_str());
    std::size_t shown = 0;
    for (const std::string& n : c.notes) {
        if (++shown > 5) {
            std::printf("         ... %zu further notes suppressed\n", c.notes.size() - 5);
            break;
        }
        std::printf("         %s\n", n.c_str());
    }
    if (!c.pass) ++failures;
}

}  // namespace

int main() {
    int failures = 0;
    report(criterion1(), failures);
    report(criterion2(), failures);
    report(criterion3(), failures);
    SweepResults sweep = run_sweep();
    report(sweep.c4, failures);
    report(sweep.c5, failures);
    report(criterion6(), failures);
    report(criterion7(), failures);
    report(criterion8(), failures);
    report(criterion9(), failures);
    report(criterion10(), failures);
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
