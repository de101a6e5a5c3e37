#pragma once

#include <string>
#include <vector>

#include "kex/instance.hpp"
#include "kex/model.hpp"
#include "kex/models.hpp"

namespace kex {

// A vertex-disjoint collection of exchanges.
struct ExchangeSet {
    std::vector<Cycle> cycles;
    std::vector<Chain> chains;
    Rational objective;  // recomputed from instance weights, terminal included
};

Cycle make_cycle(const Instance& inst, std::vector<int> vertices);
Chain make_chain(const Instance& inst, int ndd, std::vector<int> rdps);

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> errors;
};

ValidationReport validate_solution(const Instance& inst, const ExchangeSet& xs, int K, int L);

// Merges a cycle-side and a chain-side build over the same instance into one
// model: variables and rows are united, and for every pair present on both
// sides the two "at most one" rows collapse into a single row.
ModelBuild combine(const ModelBuild& cycle_build, const ModelBuild& chain_build);

// Runs every registered constraint-generation family of the build against an
// integral candidate and returns the violated rows.
std::vector<ConstraintRow> separate(const Instance& inst, const ModelBuild& build,
                                    const std::vector<double>& x);

// Heuristic cut search over a fractional point: looks for over-long cycles,
// forbidden cycles, and over-long chain paths whose exclusion rows the point
// violates. Every returned row is valid for all integral solutions, so the
// rows may be added eagerly to tighten relaxation bounds.
std::vector<ConstraintRow> separate_fractional(const Instance& inst, const ModelBuild& build,
                                               const std::vector<double>& x);

// Decodes an integral incumbent back into exchanges.
ExchangeSet extract_solution(const Instance& inst, const ModelBuild& build,
                             const std::vector<double>& x);

// Smallest positive gap between distinct objective values (1 for integer
// weights).
Rational weight_granularity(const Instance& inst);

struct SolveConfig {
    int K = 3;
    int L = 3;  // kUnboundedL allowed
    TauMode tau = TauMode::Implicit;
    PositionMethod ps = PositionMethod::Bfs;
    bool rcvf = false;
    double time_limit_s = 3600.0;
    std::string backend = "builtin";
};

struct SolveOutcome {
    IpStatus status = IpStatus::Infeasible;
    ExchangeSet solution;       // in the caller's original vertex labels
    double ip_objective = 0.0;  // solver objective, implicit-terminal constant included
    double lp_objective = 0.0;  // root relaxation value before any generated cuts
    double best_bound = 0.0;
    long long nodes = 0;
    int lazy_added = 0;
    double wall_time_s = 0.0;
    BuildStats stats;
    int rcvf_iterations = 0;
    int rcvf_deactivated = 0;
};

// Builds the model for a cycle/chain method combination (no reindexing; the
// caller controls vertex order). ChainModel::Hybrid builds the single-variable
// hybrid model and ignores the cycle model.
ModelBuild build_method(const Instance& inst, CycleModel cm, ChainModel chm,
                        const SolveConfig& cfg);

// Full pipeline: preferred vertex order, build, combine, constraint
// generation, optional reduced-cost variable fixing, extraction back into the
// original labels.
SolveOutcome solve_method(const Instance& inst, CycleModel cm, ChainModel chm,
                          const SolveConfig& cfg);

// Name <-> enum helpers shared by the CLI and the benchmark harness.
std::string to_string(CycleModel m);
std::string to_string(ChainModel m);
CycleModel cycle_model_from_string(const std::string& s);
ChainModel chain_model_from_string(const std::string& s);

}  // namespace kex
