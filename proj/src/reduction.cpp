#include "kex/reduction.hpp"

#include <algorithm>
#include <deque>

namespace kex {

int distance_infinity(const Instance& inst) { return inst.rdp_count() + 10; }

namespace {

// Hop-count BFS over pair-to-pair arcs restricted to `allowed` RDPs
// (1-based mask; empty mask = all allowed). Forward or reverse direction.
std::vector<int> bfs_hops(const Instance& inst, const std::vector<int>& sources,
                          bool reverse, const std::vector<bool>& allowed, int inf) {
    const int r = inst.rdp_count();
    std::vector<int> dist(static_cast<std::size_t>(r), inf);
    std::deque<int> q;
    for (int s : sources) {
        if (inst.is_rdp(s)) {
            if (!allowed.empty() && !allowed[s - 1]) continue;
            dist[s - 1] = 0;
            q.push_back(s);
        }
    }
    auto relax = [&](int v, int dd) {
        if (!inst.is_rdp(v)) return;
        if (!allowed.empty() && !allowed[v - 1]) return;
        if (dist[v - 1] > dd) {
            dist[v - 1] = dd;
            q.push_back(v);
        }
    };
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (reverse) {
            for (int p : inst.predecessors(u))
                if (inst.is_rdp(p)) relax(p, dist[u - 1] + 1);
        } else {
            for (int w : inst.successors(u))
                relax(w, dist[u - 1] + 1);
        }
    }
    return dist;
}

}  // namespace

DistanceTables all_pairs_distances(const Instance& inst) {
    const int r = inst.rdp_count();
    const int inf = distance_infinity(inst);
    DistanceTables t;
    t.inf = inf;
    t.d.assign(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), inf));
    if (r <= 1500) {
        // Floyd-Warshall on unit arc lengths.
        for (int v = 1; v <= r; ++v) t.d[v - 1][v - 1] = 0;
        for (const Arc& a : inst.arcs())
            if (inst.is_rdp(a.from))
                t.d[a.from - 1][a.to - 1] = std::min(t.d[a.from - 1][a.to - 1], 1);
        for (int k = 0; k < r; ++k)
            for (int i = 0; i < r; ++i) {
                if (t.d[i][k] >= inf) continue;
                for (int j = 0; j < r; ++j)
                    t.d[i][j] = std::min(t.d[i][j], t.d[i][k] + t.d[k][j]);
            }
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) t.d[i][j] = std::min(t.d[i][j], inf);
    } else {
        for (int v = 1; v <= r; ++v) {
            t.d[v - 1] = bfs_hops(inst, {v}, /*reverse=*/false, {}, inf);
        }
    }
    // Distances from the closest NDD: one arc to reach an RDP neighbour, then
    // pair-to-pair hops.
    t.d_n.assign(static_cast<std::size_t>(r), inf);
    std::vector<int> ndd_adjacent;
    for (const Arc& a : inst.arcs())
        if (inst.is_ndd(a.from)) t.d_n[a.to - 1] = 1;
    for (int v = 1; v <= r; ++v)
        if (t.d_n[v - 1] == 1) ndd_adjacent.push_back(v);
    auto from_ndds = bfs_hops(inst, ndd_adjacent, /*reverse=*/false, {}, inf);
    for (int v = 1; v <= r; ++v)
        t.d_n[v - 1] = std::min(inf, from_ndds[v - 1] >= inf ? inf : from_ndds[v - 1] + 1);
    return t;
}

int ReducedGraph::kept_vertex_count() const {
    return static_cast<int>(std::count(vertex_kept.begin(), vertex_kept.end(), true));
}
int ReducedGraph::kept_arc_count() const {
    return static_cast<int>(std::count(arc_kept.begin(), arc_kept.end(), true));
}

ReducedGraph reduce_for_model(const Instance& inst, ReductionFamily family, int K, int L) {
    const int r = inst.rdp_count();
    const auto t = all_pairs_distances(inst);
    ReducedGraph g;
    g.vertex_kept.assign(static_cast<std::size_t>(r), false);
    g.arc_kept.assign(inst.arcs().size(), false);
    g.tau_arc_kept.assign(static_cast<std::size_t>(inst.vertex_count()), false);

    std::vector<bool> cyc_v(static_cast<std::size_t>(r), false), ch_v = cyc_v;
    std::vector<bool> cyc_a(inst.arcs().size(), false), ch_a = cyc_a;
    const bool want_cycle = family != ReductionFamily::EfChain;
    const bool want_chain = family != ReductionFamily::EfCycle;

    if (want_cycle) {
        // Keep a vertex iff some incoming arc closes a cycle of length <= K,
        // and an arc iff the return path fits in the budget.
        for (std::size_t i = 0; i < inst.arcs().size(); ++i) {
            const Arc& a = inst.arcs()[i];
            if (!inst.is_rdp(a.from)) continue;
            if (t.d[a.to - 1][a.from - 1] + 1 <= K) {
                cyc_a[i] = true;
                cyc_v[a.to - 1] = true;
                cyc_v[a.from - 1] = true;
            }
        }
    }
    if (want_chain) {
        for (int v = 1; v <= r; ++v) ch_v[v - 1] = t.d_n[v - 1] + 1 <= L;
        for (std::size_t i = 0; i < inst.arcs().size(); ++i) {
            const Arc& a = inst.arcs()[i];
            if (!ch_v[a.to - 1]) continue;
            if (inst.is_ndd(a.from)) {
                // NDD arc: a chain through it has length >= 2.
                ch_a[i] = 2 <= L;
            } else {
                if (ch_v[a.from - 1] && t.d_n[a.from - 1] + 2 <= L) ch_a[i] = true;
            }
        }
        // Terminal arcs: the shortest chain ending v -> tau has d_n(v)+1 arcs.
        for (int v = 1; v <= r; ++v) g.tau_arc_kept[v - 1] = ch_v[v - 1];
        for (int v = r + 1; v <= inst.vertex_count(); ++v) g.tau_arc_kept[v - 1] = L >= 1;
    }
    for (int v = 1; v <= r; ++v)
        g.vertex_kept[v - 1] = (want_cycle && cyc_v[v - 1]) || (want_chain && ch_v[v - 1]);
    for (std::size_t i = 0; i < inst.arcs().size(); ++i)
        g.arc_kept[i] = (want_cycle && cyc_a[i]) || (want_chain && ch_a[i]);
    g.note = family == ReductionFamily::EfCycle   ? "cycle budget K"
             : family == ReductionFamily::EfChain ? "chain budget L"
                                                  : "union of cycle and chain budgets";
    return g;
}

SubgraphReduction reduce_subgraph(const Instance& inst, int s, SubgraphFamily family,
                                  int bound) {
    const int r = inst.rdp_count();
    const int inf = distance_infinity(inst);
    SubgraphReduction g;
    g.root = s;
    g.inf = inf;
    g.vertex_kept.assign(static_cast<std::size_t>(r), false);
    g.arc_kept.assign(inst.arcs().size(), false);
    g.tau_arc_kept.assign(static_cast<std::size_t>(inst.vertex_count()), false);

    if (family == SubgraphFamily::EefCycle) {
        if (!inst.is_rdp(s)) throw InstanceError("subgraph root must be an RDP");
        // Copy induced on RDPs >= s.
        std::vector<bool> allowed(static_cast<std::size_t>(r), false);
        for (int v = s; v <= r; ++v) allowed[v - 1] = true;
        g.dist_from_root = bfs_hops(inst, {s}, /*reverse=*/false, allowed, inf);
        g.dist_to_root = bfs_hops(inst, {s}, /*reverse=*/true, allowed, inf);
        for (int v = s; v <= r; ++v)
            g.vertex_kept[v - 1] = g.dist_from_root[v - 1] + g.dist_to_root[v - 1] <= bound;
        for (std::size_t i = 0; i < inst.arcs().size(); ++i) {
            const Arc& a = inst.arcs()[i];
            if (!inst.is_rdp(a.from) || a.from < s || a.to < s) continue;
            if (!g.vertex_kept[a.from - 1] || !g.vertex_kept[a.to - 1]) continue;
            // A self-loop is a length-1 cycle; it belongs only to its own copy.
            if (a.from == a.to && a.from != s) continue;
            if (g.dist_from_root[a.from - 1] + 1 + g.dist_to_root[a.to - 1] <= bound)
                g.arc_kept[i] = true;
        }
    } else {
        if (!inst.is_ndd(s)) throw InstanceError("chain subgraph root must be an NDD");
        // Copy containing the root NDD, every RDP, and tau.
        std::vector<int> dist(static_cast<std::size_t>(r), inf);
        std::deque<int> q;
        for (int v : inst.successors(s)) {
            dist[v - 1] = 1;
            q.push_back(v);
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int w : inst.successors(u))
                if (inst.is_rdp(w) && dist[w - 1] > dist[u - 1] + 1) {
                    dist[w - 1] = dist[u - 1] + 1;
                    q.push_back(w);
                }
        }
        g.dist_from_root = dist;
        for (int v = 1; v <= r; ++v) g.vertex_kept[v - 1] = dist[v - 1] + 1 <= bound;
        for (std::size_t i = 0; i < inst.arcs().size(); ++i) {
            const Arc& a = inst.arcs()[i];
            if (a.from == a.to) continue;  // chains never revisit a pair
            if (inst.is_ndd(a.from)) {
                if (a.from == s && g.vertex_kept[a.to - 1] && 2 <= bound) g.arc_kept[i] = true;
            } else if (g.vertex_kept[a.from - 1] && g.vertex_kept[a.to - 1] &&
                       dist[a.from - 1] + 2 <= bound) {
                g.arc_kept[i] = true;
            }
        }
        // Terminal arcs: shortest chain ending at v is dist(v)+1 arcs.
        for (int v = 1; v <= r; ++v) g.tau_arc_kept[v - 1] = dist[v - 1] + 1 <= bound;
        g.tau_arc_kept[s - 1] = bound >= 1;
    }
    return g;
}

}  // namespace kex
