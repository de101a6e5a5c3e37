#pragma once

#include <map>
#include <string>
#include <vector>

#include "kex/enumeration.hpp"
#include "kex/instance.hpp"
#include "kex/model.hpp"

namespace kex {

enum class CycleModel { None, Cf, Hcf, Ef, Eef, Pief };
enum class ChainModel { None, Cf, Hcf, EfExp, EfMtz, EefExp, EefMtz, Pief, Hybrid };
enum class TauMode { Explicit, Implicit };

// What a binary variable encodes, for solution extraction.
struct VarMeta {
    enum class Type {
        CycleSel,       // index into cycles list
        ChainSel,       // index into chains list
        HalfCycleSel,   // index into half_cycles list
        HalfChainSel,   // index into half_chains list (firsts/seconds/ones concatenated)
        CycleArc,       // (u,v) of a cycle-side arc variable
        ChainArc,       // (u,v), v may be kTau
        HybridArc,      // (u,v), v may be kTau
        SubgraphCycleArc,  // (s,u,v)
        SubgraphChainArc,  // (s,u,v), v may be kTau
        PosCycleArc,       // (s,u,v,k)
        PosChainArc,       // (u,v,k), v may be kTau
        Timestamp,         // RDP v
    };
    Type type{};
    int index = -1;
    int s = 0, u = 0, v = 0, k = 0;
};

// Constraint families generated on demand during search.
struct SeparatorSpec {
    enum class Family {
        CycleLongCycle,   // arc model: selected cycle longer than K -> path cut
        ChainLongChain,   // arc model: selected chain longer than L -> path cut
        ChainAnyCycle,    // chain arc model: any selected cycle -> cycle cut
        HybridLongCycle,  // whole-cycle cut for cycles longer than K
        HybridLongChain,  // path cut with the feeding-arc term
    };
    Family family{};
    int bound = 0;
    bool subgraph_vars = false;  // cut aggregates per-copy variables
};

struct BuildStats {
    int vars = 0;
    int constraints = 0;
    int pre_reduction_vars = 0;  // structural count before any pruning rules
};

struct ModelBuild {
    IlpModel model;
    CycleModel cycle_kind = CycleModel::None;
    ChainModel chain_kind = ChainModel::None;
    TauMode tau_mode = TauMode::Explicit;
    int K = 0, L = 0;
    std::vector<VarMeta> var_meta;          // aligned with model.vars
    std::map<int, int> rdp_use_row;         // RDP -> id of its "at most one" row
    std::vector<SeparatorSpec> separators;
    BuildStats stats;
    // Enumerated objects referenced by var_meta indices.
    std::vector<Cycle> cycles;
    std::vector<Chain> chains;
    std::vector<HalfCycle> half_cycles;
    std::vector<HalfChain> half_chains;
};

// Builders assume the caller already applied the model's preferred vertex
// ordering; internally they apply the matching graph reduction.
ModelBuild build_cf_cycle(const Instance& inst, int K);
ModelBuild build_hcf_cycle(const Instance& inst, int K);
ModelBuild build_ef_cycle(const Instance& inst, int K);
ModelBuild build_eef_cycle(const Instance& inst, int K);
ModelBuild build_pief_cycle(const Instance& inst, int K, PositionMethod method);

ModelBuild build_cf_chain(const Instance& inst, int L, TauMode tau);
ModelBuild build_hcf_chain(const Instance& inst, int L, TauMode tau);
ModelBuild build_ef_chain_exp(const Instance& inst, int L, TauMode tau);
ModelBuild build_ef_chain_mtz(const Instance& inst, int L, TauMode tau);
ModelBuild build_eef_chain_exp(const Instance& inst, int L, TauMode tau);
ModelBuild build_eef_chain_mtz(const Instance& inst, int L, TauMode tau);
ModelBuild build_pief_chain(const Instance& inst, int L, TauMode tau, PositionMethod method);

ModelBuild build_ef_hybrid(const Instance& inst, int K, int L, TauMode tau);

inline constexpr int kUnboundedL = -1;

struct NormalizedL {
    int L = 0;
    // When the limit was unbounded, some constraint families become vacuous.
    bool drop_long_chain_cuts = false;  // chain-length path cuts never needed
    bool split_subgraph_cap = false;    // per-copy cap replaced by symmetry rows
};

NormalizedL normalize_L(const Instance& inst, int L);

// The ordering each formulation prefers (applied by the solve driver).
VertexOrder preferred_order(CycleModel m);

}  // namespace kex
