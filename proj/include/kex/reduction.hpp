#pragma once

#include <string>
#include <vector>

#include "kex/instance.hpp"

namespace kex {

// Sentinel for "unreachable"; large enough that d + 2 comparisons never wrap.
int distance_infinity(const Instance& inst);

struct DistanceTables {
    // d[u-1][v-1]: fewest pair-to-pair arcs from RDP u to RDP v.
    std::vector<std::vector<int>> d;
    // d_n[v-1]: fewest arcs from any NDD to RDP v (first hop may be an NDD arc).
    std::vector<int> d_n;
    int inf = 0;
};

DistanceTables all_pairs_distances(const Instance& inst);

enum class ReductionFamily { EfCycle, EfChain, EfHybrid };
enum class SubgraphFamily { EefCycle, EefChain };

// Survivors of a model-family reduction. Arc masks index the instance's arc
// list; tau-arc survival is per-vertex (chain families only).
struct ReducedGraph {
    std::vector<bool> vertex_kept;  // index v-1, RDPs only
    std::vector<bool> arc_kept;     // index into inst.arcs()
    std::vector<bool> tau_arc_kept; // index v-1 over all vertices
    std::string note;

    int kept_vertex_count() const;
    int kept_arc_count() const;
};

// Drops vertices and arcs that cannot lie on any feasible cycle (bound K) or
// chain (bound L); the hybrid family keeps the union.
ReducedGraph reduce_for_model(const Instance& inst, ReductionFamily family, int K, int L);

// A subgraph copy plus its root distances. For cycle families the copy is
// induced on RDPs >= s; for chain families on {s} + all RDPs + tau.
struct SubgraphReduction {
    int root = 0;
    std::vector<bool> vertex_kept;  // index v-1 (RDPs; root NDD always kept)
    std::vector<bool> arc_kept;     // index into inst.arcs()
    std::vector<bool> tau_arc_kept; // chain families; index v-1
    std::vector<int> dist_from_root;  // index v-1, within the copy
    std::vector<int> dist_to_root;    // cycle families only
    int inf = 0;
};

SubgraphReduction reduce_subgraph(const Instance& inst, int s, SubgraphFamily family,
                                  int bound);

}  // namespace kex
