#include "kex/assembly.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "kex/reduction.hpp"

namespace kex {

namespace {

std::vector<int> rotate_min_first(std::vector<int> vs) {
    auto it = std::min_element(vs.begin(), vs.end());
    std::rotate(vs.begin(), it, vs.end());
    return vs;
}

}  // namespace

Cycle make_cycle(const Instance& inst, std::vector<int> vertices) {
    Cycle c;
    c.vertices = rotate_min_first(std::move(vertices));
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        const int u = c.vertices[i];
        const int v = c.vertices[(i + 1) % c.vertices.size()];
        c.weight += inst.arc_weight(u, v);
    }
    return c;
}

Chain make_chain(const Instance& inst, int ndd, std::vector<int> rdps) {
    Chain c;
    c.ndd = ndd;
    c.rdps = std::move(rdps);
    int prev = ndd;
    for (int v : c.rdps) {
        c.weight += inst.arc_weight(prev, v);
        prev = v;
    }
    c.weight += inst.tau_weight(prev);
    return c;
}

ValidationReport validate_solution(const Instance& inst, const ExchangeSet& xs, int K, int L) {
    ValidationReport rep;
    auto fail = [&](std::string msg) {
        rep.valid = false;
        rep.errors.push_back(std::move(msg));
    };
    std::set<int> used_rdps, used_ndds;
    Rational total;
    for (const Cycle& c : xs.cycles) {
        if (c.vertices.empty()) { fail("empty cycle"); continue; }
        if (static_cast<int>(c.vertices.size()) > K)
            fail("cycle exceeds length limit " + std::to_string(K));
        Rational w;
        for (std::size_t i = 0; i < c.vertices.size(); ++i) {
            const int u = c.vertices[i];
            const int v = c.vertices[(i + 1) % c.vertices.size()];
            if (!inst.is_rdp(u)) fail("cycle vertex " + std::to_string(u) + " is not a pair");
            if (!inst.has_arc(u, v) || (u == v && c.vertices.size() > 1)) {
                fail("missing arc " + std::to_string(u) + "->" + std::to_string(v));
                continue;
            }
            w += inst.arc_weight(u, v);
            if (!used_rdps.insert(u).second)
                fail("pair " + std::to_string(u) + " used twice");
        }
        total += w;
    }
    for (const Chain& ch : xs.chains) {
        if (!inst.is_ndd(ch.ndd)) fail("chain start " + std::to_string(ch.ndd) + " is not a donor");
        if (!used_ndds.insert(ch.ndd).second)
            fail("donor " + std::to_string(ch.ndd) + " used twice");
        if (ch.length() > L) fail("chain exceeds length limit " + std::to_string(L));
        Rational w;
        int prev = ch.ndd;
        bool ok = true;
        for (int v : ch.rdps) {
            if (!inst.is_rdp(v)) { fail("chain vertex " + std::to_string(v) + " is not a pair"); ok = false; break; }
            if (!inst.has_arc(prev, v)) {
                fail("missing arc " + std::to_string(prev) + "->" + std::to_string(v));
                ok = false;
                break;
            }
            w += inst.arc_weight(prev, v);
            if (!used_rdps.insert(v).second) fail("pair " + std::to_string(v) + " used twice");
            prev = v;
        }
        if (ok) w += inst.tau_weight(prev);
        total += w;
    }
    if (!(total == xs.objective))
        fail("objective mismatch: stored " + xs.objective.str() + ", recomputed " + total.str());
    return rep;
}

ModelBuild combine(const ModelBuild& cycle_build, const ModelBuild& chain_build) {
    ModelBuild out = cycle_build;
    out.chain_kind = chain_build.chain_kind;
    out.tau_mode = chain_build.tau_mode;
    out.L = chain_build.L;
    const int voff = static_cast<int>(out.model.vars.size());
    out.model.obj_constant += chain_build.model.obj_constant;
    for (Variable v : chain_build.model.vars) {
        v.id += voff;
        out.model.vars.push_back(std::move(v));
    }
    std::map<int, int> rdp_of_use_row;
    for (const auto& [rdp, row] : chain_build.rdp_use_row) rdp_of_use_row[row] = rdp;
    for (const ConstraintRow& src : chain_build.model.rows) {
        const auto uit = rdp_of_use_row.find(src.id);
        if (uit != rdp_of_use_row.end()) {
            const auto tgt = out.rdp_use_row.find(uit->second);
            if (tgt != out.rdp_use_row.end()) {
                // One "at most one exchange" row for the pair, both sides.
                ConstraintRow& row = out.model.rows[tgt->second];
                for (const auto& [j, c] : src.terms) row.terms.push_back({j + voff, c});
                if (row.label.size() < 2 || row.label.substr(row.label.size() - 2) != "+m")
                    row.label += "+m";
                continue;
            }
        }
        ConstraintRow r = src;
        for (auto& t : r.terms) t.first += voff;
        r.id = static_cast<int>(out.model.rows.size());
        if (!cycle_build.model.vars.empty()) r.label = "n_" + r.label;
        out.model.rows.push_back(std::move(r));
        if (uit != rdp_of_use_row.end()) out.rdp_use_row[uit->second] = r.id;
    }
    for (const VarMeta& m : chain_build.var_meta) out.var_meta.push_back(m);
    for (const SeparatorSpec& s : chain_build.separators) out.separators.push_back(s);
    if (out.chains.empty()) out.chains = chain_build.chains;
    if (out.half_chains.empty()) out.half_chains = chain_build.half_chains;
    out.stats.vars = static_cast<int>(out.model.vars.size());
    out.stats.constraints = static_cast<int>(out.model.rows.size());
    out.stats.pre_reduction_vars =
        cycle_build.stats.pre_reduction_vars + chain_build.stats.pre_reduction_vars;
    return out;
}

namespace {

// Per-side arc view of an incumbent: the selected successor of each vertex
// and, independently of selection, every variable attached to each arc.
struct ArcView {
    std::map<int, int> succ;  // u -> v over selected arcs (v may be kTau)
    std::map<std::pair<int, int>, std::vector<int>> vars_of_arc;  // all vars per (u,v)
};

bool is_cycle_arc_type(VarMeta::Type t) {
    return t == VarMeta::Type::CycleArc || t == VarMeta::Type::SubgraphCycleArc ||
           t == VarMeta::Type::PosCycleArc;
}

bool is_chain_arc_type(VarMeta::Type t) {
    return t == VarMeta::Type::ChainArc || t == VarMeta::Type::SubgraphChainArc ||
           t == VarMeta::Type::PosChainArc;
}

ArcView arc_view(const ModelBuild& b, const std::vector<double>& x,
                 bool (*want)(VarMeta::Type)) {
    ArcView view;
    for (std::size_t j = 0; j < b.var_meta.size(); ++j) {
        const VarMeta& m = b.var_meta[j];
        if (!want(m.type)) continue;
        view.vars_of_arc[{m.u, m.v}].push_back(static_cast<int>(j));
        if (x[j] > 0.5) view.succ[m.u] = m.v;
    }
    return view;
}

bool is_hybrid_type(VarMeta::Type t) { return t == VarMeta::Type::HybridArc; }

// Walks the selected arcs: chains starting at donors, then remaining cycles.
struct Decoded {
    std::vector<std::pair<int, std::vector<int>>> chains;  // (ndd, rdps)
    std::vector<std::vector<int>> cycles;                  // rdp sequences
};

Decoded decode(const Instance& inst, const ArcView& view) {
    Decoded d;
    std::set<int> used;
    for (const auto& [u, v0] : view.succ) {
        if (!inst.is_ndd(u)) continue;
        std::vector<int> rdps;
        int cur = v0;
        used.insert(u);
        while (cur != kTau) {
            if (used.count(cur)) throw std::logic_error("incumbent revisits a vertex");
            used.insert(cur);
            rdps.push_back(cur);
            auto it = view.succ.find(cur);
            if (it == view.succ.end()) break;
            cur = it->second;
        }
        d.chains.push_back({u, std::move(rdps)});
    }
    for (const auto& [u, v0] : view.succ) {
        if (used.count(u) || inst.is_ndd(u) || v0 == kTau) continue;
        std::vector<int> cyc;
        int cur = u;
        while (!used.count(cur)) {
            used.insert(cur);
            cyc.push_back(cur);
            auto it = view.succ.find(cur);
            if (it == view.succ.end() || it->second == kTau)
                throw std::logic_error("incumbent path does not start at a donor");
            cur = it->second;
        }
        if (cur != u) throw std::logic_error("incumbent arcs form a lasso");
        d.cycles.push_back(std::move(cyc));
    }
    return d;
}

void append_arc_terms(const ArcView& view, int u, int v,
                      std::vector<std::pair<int, double>>& terms) {
    const auto it = view.vars_of_arc.find({u, v});
    if (it == view.vars_of_arc.end()) return;
    for (int j : it->second) terms.push_back({j, 1.0});
}

std::string seq_label(const char* head, const std::vector<int>& vs) {
    std::string s = head;
    for (int v : vs) s += "_" + std::to_string(v);
    return s;
}

// Path-form cut forbidding any cycle that runs through more than `K` pairs:
// over the first K vertices of the offending cycle, all K-1 path arcs minus
// the closing arc can total at most K-2.
ConstraintRow long_cycle_path_cut(const ArcView& view, const std::vector<int>& cyc, int K) {
    std::vector<int> p(cyc.begin(), cyc.begin() + K);
    ConstraintRow r;
    for (int i = 0; i + 1 < K; ++i) append_arc_terms(view, p[i], p[i + 1], r.terms);
    const auto close = view.vars_of_arc.find({p[K - 1], p[0]});
    if (close != view.vars_of_arc.end())
        for (int j : close->second) r.terms.push_back({j, -1.0});
    r.sense = Sense::Le;
    r.rhs = K - 2;
    r.label = seq_label("cut_lc", p);
    r.lazy_class = "long_cycle";
    return r;
}

// Whole-cycle exclusion: at most all-but-one of the cycle's arcs.
ConstraintRow cycle_cut(const ArcView& view, const std::vector<int>& cyc, const char* cls) {
    ConstraintRow r;
    for (std::size_t i = 0; i < cyc.size(); ++i)
        append_arc_terms(view, cyc[i], cyc[(i + 1) % cyc.size()], r.terms);
    r.sense = Sense::Le;
    r.rhs = static_cast<double>(cyc.size()) - 1.0;
    r.label = seq_label("cut_cyc", cyc);
    r.lazy_class = cls;
    return r;
}

// Over-long chain, chain-variable form: the linking arcs of a path of L pairs
// cannot all be chosen in any length-feasible solution.
ConstraintRow long_chain_path_cut(const ArcView& view, const std::vector<int>& p, int L) {
    ConstraintRow r;
    for (int i = 0; i + 1 < L; ++i) append_arc_terms(view, p[i], p[i + 1], r.terms);
    r.sense = Sense::Le;
    r.rhs = L - 2;
    r.label = seq_label("cut_lp", p);
    r.lazy_class = "long_chain";
    return r;
}

// Over-long chain, hybrid form: a path of L pairs plus any donor arc feeding
// its head would make a chain of more than L transplants.
ConstraintRow hybrid_chain_head_cut(const Instance& inst, const ArcView& view,
                                    const std::vector<int>& p, int L) {
    ConstraintRow r;
    for (int i = 0; i + 1 < L; ++i) append_arc_terms(view, p[i], p[i + 1], r.terms);
    for (int n = inst.rdp_count() + 1; n <= inst.vertex_count(); ++n)
        append_arc_terms(view, n, p.front(), r.terms);
    r.sense = Sense::Le;
    r.rhs = L - 1;
    r.label = seq_label("cut_hp", p);
    r.lazy_class = "long_chain";
    return r;
}

// ---- fractional-point cut search ----------------------------------------
//
// At a fractional relaxation point the decode() walk is meaningless, so the
// violated structures are found by dynamic programming over the support
// graph: pair-to-pair arcs whose attached variables carry positive weight.

constexpr double kSupportEps = 1e-9;
constexpr double kViolationMin = 1e-4;

struct SupportGraph {
    std::vector<int> verts;                       // pair vertices, ascending
    std::map<int, int> index;                     // vertex -> position in verts
    std::map<std::pair<int, int>, double> weight;  // arc -> summed variable value
};

SupportGraph support_graph(const Instance& inst, const ArcView& view,
                           const std::vector<double>& x) {
    SupportGraph g;
    for (const auto& [arc, vars] : view.vars_of_arc) {
        if (!inst.is_rdp(arc.first) || !inst.is_rdp(arc.second)) continue;
        double s = 0.0;
        for (int j : vars) s += x[j];
        if (s <= kSupportEps) continue;
        g.weight[arc] = s;
        g.index.emplace(arc.first, 0);
        g.index.emplace(arc.second, 0);
    }
    for (auto& [v, idx] : g.index) {
        idx = static_cast<int>(g.verts.size());
        g.verts.push_back(v);
    }
    return g;
}

// Simple cycles of more than `min_len - 1` arcs whose summed arc weight
// exceeds length-1 by at least the violation threshold. One cycle per start
// vertex: the cheapest closed walk under arc cost 1-w that reconstructs to a
// simple cycle.
std::vector<std::vector<int>> violated_long_cycles(const SupportGraph& g, int min_len) {
    std::vector<std::vector<int>> out;
    const int V = static_cast<int>(g.verts.size());
    if (V < 2 || min_len > V) return out;
    const double inf = std::numeric_limits<double>::infinity();
    std::set<std::vector<int>> seen;  // canonical (lowest vertex first) forms
    for (int r = 0; r < V; ++r) {
        // cost[k][i]: cheapest walk of k arcs from root to vertex i.
        std::vector<std::vector<double>> cost(V + 1, std::vector<double>(V, inf));
        std::vector<std::vector<int>> pred(V + 1, std::vector<int>(V, -1));
        cost[0][r] = 0.0;
        for (int k = 1; k <= V; ++k) {
            for (const auto& [arc, w] : g.weight) {
                const int a = g.index.at(arc.first), b = g.index.at(arc.second);
                const double c = cost[k - 1][a] + (1.0 - w);
                if (c < cost[k][b] - 1e-12) {
                    cost[k][b] = c;
                    pred[k][b] = a;
                }
            }
            if (k < min_len || cost[k][r] >= 1.0 - kViolationMin) continue;
            std::vector<int> cyc(k);
            int cur = r;
            bool simple = true;
            for (int s = k; s >= 1; --s) {
                cyc[s - 1] = g.verts[cur];
                cur = pred[s][cur];
                if (cur < 0) { simple = false; break; }
            }
            if (!simple || cur != r) continue;
            std::set<int> uniq(cyc.begin(), cyc.end());
            if (static_cast<int>(uniq.size()) != k) continue;
            const auto lowest = std::min_element(cyc.begin(), cyc.end());
            std::vector<int> canon(lowest, cyc.end());
            canon.insert(canon.end(), cyc.begin(), lowest);
            if (seen.insert(canon).second) out.push_back(std::move(canon));
            break;  // one cut per root; later rounds can find more
        }
    }
    return out;
}

// Heaviest simple path of exactly `len` vertices starting at `head`; empty if
// none reconstructs simply or its weight is not above `threshold`.
std::vector<int> violated_path_from(const SupportGraph& g, int head, int len, double threshold) {
    const int V = static_cast<int>(g.verts.size());
    const auto hit = g.index.find(head);
    if (hit == g.index.end() || len < 1 || len > V) return {};
    const double ninf = -std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> best(len + 1, std::vector<double>(V, ninf));
    std::vector<std::vector<int>> pred(len + 1, std::vector<int>(V, -1));
    best[1][hit->second] = 0.0;
    for (int k = 2; k <= len; ++k)
        for (const auto& [arc, w] : g.weight) {
            const int a = g.index.at(arc.first), b = g.index.at(arc.second);
            if (best[k - 1][a] == ninf) continue;
            const double c = best[k - 1][a] + w;
            if (c > best[k][b] + 1e-12) {
                best[k][b] = c;
                pred[k][b] = a;
            }
        }
    int tail = -1;
    double bw = threshold;
    for (int i = 0; i < V; ++i)
        if (best[len][i] > bw + kViolationMin) {
            bw = best[len][i];
            tail = i;
        }
    if (tail < 0) return {};
    std::vector<int> p(len);
    int cur = tail;
    for (int s = len; s >= 1; --s) {
        if (cur < 0) return {};
        p[s - 1] = g.verts[cur];
        cur = pred[s][cur];
    }
    std::set<int> uniq(p.begin(), p.end());
    if (static_cast<int>(uniq.size()) != len || p.front() != head) return {};
    return p;
}

}  // namespace

std::vector<ConstraintRow> separate(const Instance& inst, const ModelBuild& build,
                                    const std::vector<double>& x) {
    std::vector<ConstraintRow> cuts;
    for (const SeparatorSpec& spec : build.separators) {
        switch (spec.family) {
            case SeparatorSpec::Family::CycleLongCycle: {
                const ArcView view = arc_view(build, x, is_cycle_arc_type);
                for (const auto& cyc : decode(inst, view).cycles)
                    if (static_cast<int>(cyc.size()) > spec.bound)
                        cuts.push_back(long_cycle_path_cut(view, cyc, spec.bound));
                break;
            }
            case SeparatorSpec::Family::ChainLongChain: {
                const ArcView view = arc_view(build, x, is_chain_arc_type);
                const int L = spec.bound;
                for (const auto& [ndd, rdps] : decode(inst, view).chains) {
                    if (static_cast<int>(rdps.size()) + 1 <= L) continue;
                    std::vector<int> p(rdps.begin(), rdps.begin() + L);
                    cuts.push_back(long_chain_path_cut(view, p, L));
                }
                break;
            }
            case SeparatorSpec::Family::ChainAnyCycle: {
                const ArcView view = arc_view(build, x, is_chain_arc_type);
                for (const auto& cyc : decode(inst, view).cycles)
                    cuts.push_back(cycle_cut(view, cyc, "any_cycle"));
                break;
            }
            case SeparatorSpec::Family::HybridLongCycle: {
                const ArcView view = arc_view(build, x, is_hybrid_type);
                for (const auto& cyc : decode(inst, view).cycles)
                    if (static_cast<int>(cyc.size()) > spec.bound)
                        cuts.push_back(cycle_cut(view, cyc, "long_cycle"));
                break;
            }
            case SeparatorSpec::Family::HybridLongChain: {
                const ArcView view = arc_view(build, x, is_hybrid_type);
                const int L = spec.bound;
                for (const auto& [ndd, rdps] : decode(inst, view).chains) {
                    if (static_cast<int>(rdps.size()) + 1 <= L) continue;
                    std::vector<int> p(rdps.begin(), rdps.begin() + L);
                    cuts.push_back(hybrid_chain_head_cut(inst, view, p, L));
                }
                break;
            }
        }
    }
    return cuts;
}

std::vector<ConstraintRow> separate_fractional(const Instance& inst, const ModelBuild& build,
                                               const std::vector<double>& x) {
    std::vector<ConstraintRow> cuts;
    for (const SeparatorSpec& spec : build.separators) {
        switch (spec.family) {
            case SeparatorSpec::Family::CycleLongCycle: {
                const ArcView view = arc_view(build, x, is_cycle_arc_type);
                const SupportGraph g = support_graph(inst, view, x);
                for (const auto& cyc : violated_long_cycles(g, spec.bound + 1))
                    cuts.push_back(cycle_cut(view, cyc, "long_cycle"));
                break;
            }
            case SeparatorSpec::Family::ChainAnyCycle: {
                const ArcView view = arc_view(build, x, is_chain_arc_type);
                const SupportGraph g = support_graph(inst, view, x);
                for (const auto& cyc : violated_long_cycles(g, 2))
                    cuts.push_back(cycle_cut(view, cyc, "any_cycle"));
                break;
            }
            case SeparatorSpec::Family::ChainLongChain: {
                const ArcView view = arc_view(build, x, is_chain_arc_type);
                const SupportGraph g = support_graph(inst, view, x);
                const int L = spec.bound;
                if (L < 2) break;
                for (int h : g.verts) {
                    const auto p = violated_path_from(g, h, L, static_cast<double>(L - 2));
                    if (!p.empty()) cuts.push_back(long_chain_path_cut(view, p, L));
                }
                break;
            }
            case SeparatorSpec::Family::HybridLongCycle: {
                const ArcView view = arc_view(build, x, is_hybrid_type);
                const SupportGraph g = support_graph(inst, view, x);
                for (const auto& cyc : violated_long_cycles(g, spec.bound + 1))
                    cuts.push_back(cycle_cut(view, cyc, "long_cycle"));
                break;
            }
            case SeparatorSpec::Family::HybridLongChain: {
                const ArcView view = arc_view(build, x, is_hybrid_type);
                const SupportGraph g = support_graph(inst, view, x);
                const int L = spec.bound;
                if (L < 1) break;
                for (int h : g.verts) {
                    // Weight already entering the head from non-directed
                    // donors joins the cut's left-hand side.
                    double inflow = 0.0;
                    for (const auto& [arc, vars] : view.vars_of_arc) {
                        if (!inst.is_ndd(arc.first) || arc.second != h) continue;
                        for (int j : vars) inflow += x[j];
                    }
                    if (inflow <= kSupportEps) continue;
                    const auto p = violated_path_from(g, h, L, L - 1 - inflow);
                    if (!p.empty()) cuts.push_back(hybrid_chain_head_cut(inst, view, p, L));
                }
                break;
            }
        }
    }
    return cuts;
}

ExchangeSet extract_solution(const Instance& inst, const ModelBuild& build,
                             const std::vector<double>& x) {
    ExchangeSet xs;
    bool have_cycle_arcs = false, have_chain_arcs = false, have_hybrid = false;
    std::vector<const HalfCycle*> sel_halves;
    std::vector<const HalfChain*> sel_firsts, sel_seconds;
    for (std::size_t j = 0; j < build.var_meta.size(); ++j) {
        const VarMeta& m = build.var_meta[j];
        if (is_cycle_arc_type(m.type)) have_cycle_arcs = true;
        if (is_chain_arc_type(m.type)) have_chain_arcs = true;
        if (m.type == VarMeta::Type::HybridArc) have_hybrid = true;
        if (x[j] <= 0.5) continue;
        switch (m.type) {
            case VarMeta::Type::CycleSel: xs.cycles.push_back(build.cycles[m.index]); break;
            case VarMeta::Type::ChainSel: xs.chains.push_back(build.chains[m.index]); break;
            case VarMeta::Type::HalfCycleSel:
                sel_halves.push_back(&build.half_cycles[m.index]);
                break;
            case VarMeta::Type::HalfChainSel: {
                const HalfChain& h = build.half_chains[m.index];
                if (h.kind == HalfChain::Kind::First)
                    sel_firsts.push_back(&h);
                else if (h.kind == HalfChain::Kind::Second)
                    sel_seconds.push_back(&h);
                else
                    xs.chains.push_back(make_chain(inst, h.ndd, {}));
                break;
            }
            default: break;
        }
    }
    // Two half-cycles with swapped endpoints reconstruct one cycle.
    {
        std::map<std::pair<int, int>, const HalfCycle*> open;
        for (const HalfCycle* h : sel_halves) {
            if (h->is_loop()) {
                xs.cycles.push_back(make_cycle(inst, h->vertices));
                continue;
            }
            const auto partner = open.find({h->end(), h->start()});
            if (partner == open.end()) {
                open[{h->start(), h->end()}] = h;
                continue;
            }
            const HalfCycle* g = partner->second;
            open.erase(partner);
            std::vector<int> verts(h->vertices.begin(), h->vertices.end() - 1);
            verts.insert(verts.end(), g->vertices.begin(), g->vertices.end() - 1);
            xs.cycles.push_back(make_cycle(inst, std::move(verts)));
        }
        if (!open.empty()) throw std::logic_error("unmatched half-cycle in incumbent");
    }
    // A first half-chain joins the second that starts at its last pair.
    {
        std::map<int, const HalfChain*> second_at;
        for (const HalfChain* s : sel_seconds) second_at[s->start_rdp()] = s;
        for (const HalfChain* f : sel_firsts) {
            const auto it = second_at.find(f->end_rdp());
            if (it == second_at.end()) throw std::logic_error("unmatched half-chain in incumbent");
            std::vector<int> rdps = f->rdps;
            rdps.insert(rdps.end(), it->second->rdps.begin() + 1, it->second->rdps.end());
            second_at.erase(it);
            xs.chains.push_back(make_chain(inst, f->ndd, std::move(rdps)));
        }
        if (!second_at.empty()) throw std::logic_error("unmatched half-chain in incumbent");
    }
    if (have_cycle_arcs) {
        const Decoded d = decode(inst, arc_view(build, x, is_cycle_arc_type));
        if (!d.chains.empty()) throw std::logic_error("chain decoded from cycle variables");
        for (const auto& cyc : d.cycles) xs.cycles.push_back(make_cycle(inst, cyc));
    }
    if (have_chain_arcs) {
        const Decoded d = decode(inst, arc_view(build, x, is_chain_arc_type));
        if (!d.cycles.empty()) throw std::logic_error("cycle decoded from chain variables");
        for (const auto& [ndd, rdps] : d.chains) xs.chains.push_back(make_chain(inst, ndd, rdps));
    }
    if (have_hybrid) {
        const Decoded d = decode(inst, arc_view(build, x, is_hybrid_type));
        for (const auto& [ndd, rdps] : d.chains) xs.chains.push_back(make_chain(inst, ndd, rdps));
        for (const auto& cyc : d.cycles) xs.cycles.push_back(make_cycle(inst, cyc));
    }
    // Under the implicit-terminal encoding every unused donor donates
    // straight to the terminal; surface that as a length-one chain so the
    // decoded set carries the full model objective.
    if (build.tau_mode == TauMode::Implicit && build.chain_kind != ChainModel::None) {
        std::set<int> used;
        for (const Chain& c : xs.chains) used.insert(c.ndd);
        for (int n = inst.rdp_count() + 1; n <= inst.vertex_count(); ++n)
            if (!used.count(n)) xs.chains.push_back(make_chain(inst, n, {}));
    }
    // Donor-to-terminal selections decode as length-one chains.
    if (have_chain_arcs || have_hybrid) {
        std::set<int> chained;
        for (const Chain& c : xs.chains) chained.insert(c.ndd);
        for (std::size_t j = 0; j < build.var_meta.size(); ++j) {
            const VarMeta& m = build.var_meta[j];
            if (x[j] <= 0.5 || m.v != kTau) continue;
            if (!(is_chain_arc_type(m.type) || m.type == VarMeta::Type::HybridArc)) continue;
            if (inst.is_ndd(m.u) && !chained.count(m.u)) {
                chained.insert(m.u);
                xs.chains.push_back(make_chain(inst, m.u, {}));
            }
        }
    }
    for (const Cycle& c : xs.cycles) xs.objective += c.weight;
    for (const Chain& c : xs.chains) xs.objective += c.weight;
    return xs;
}

Rational weight_granularity(const Instance& inst) {
    std::int64_t l = 1;
    auto fold = [&](const Rational& w) { l = std::lcm(l, w.den()); };
    for (const Rational& w : inst.weights()) fold(w);
    for (const Rational& w : inst.tau_weights()) fold(w);
    return Rational(1, l);
}

ModelBuild build_method(const Instance& inst, CycleModel cm, ChainModel chm,
                        const SolveConfig& cfg) {
    const NormalizedL nl = normalize_L(inst, cfg.L);
    if (chm == ChainModel::Hybrid) return build_ef_hybrid(inst, cfg.K, nl.L, cfg.tau);
    ModelBuild cb, chb;
    if (cm != CycleModel::None) {
        switch (cm) {
            case CycleModel::Cf: cb = build_cf_cycle(inst, cfg.K); break;
            case CycleModel::Hcf: cb = build_hcf_cycle(inst, cfg.K); break;
            case CycleModel::Ef: cb = build_ef_cycle(inst, cfg.K); break;
            case CycleModel::Eef: cb = build_eef_cycle(inst, cfg.K); break;
            case CycleModel::Pief: cb = build_pief_cycle(inst, cfg.K, cfg.ps); break;
            default: break;
        }
    }
    if (chm != ChainModel::None && cfg.L != 0) {
        switch (chm) {
            case ChainModel::Cf: chb = build_cf_chain(inst, nl.L, cfg.tau); break;
            case ChainModel::Hcf: chb = build_hcf_chain(inst, nl.L, cfg.tau); break;
            case ChainModel::EfExp: chb = build_ef_chain_exp(inst, nl.L, cfg.tau); break;
            case ChainModel::EfMtz: chb = build_ef_chain_mtz(inst, nl.L, cfg.tau); break;
            case ChainModel::EefExp: chb = build_eef_chain_exp(inst, nl.L, cfg.tau); break;
            case ChainModel::EefMtz: chb = build_eef_chain_mtz(inst, nl.L, cfg.tau); break;
            case ChainModel::Pief: chb = build_pief_chain(inst, nl.L, cfg.tau, cfg.ps); break;
            default: break;
        }
    }
    ModelBuild out = combine(cb, chb);
    out.cycle_kind = cm;
    out.chain_kind = chm;
    out.K = cfg.K;
    out.L = nl.L;
    return out;
}

namespace {

double floor_to_granularity(double v, double g) {
    return std::floor(v / g + 1e-9) * g;
}

// Destructive-bound loop with reduced-cost deactivation: variables whose LP
// reduced cost proves they are zero in every solution reaching the current
// target are removed before the integer solve; refuting a target lowers it
// by one weight step and re-derives the deactivations from the same LP.
IpResult run_rcvf(SolverBackend& backend, const IlpModel& model, const LpResult& lp,
                  IpConfig ipc, double granularity, int* iterations, int* deactivated) {
    const double eps = 1e-7;
    double target = floor_to_granularity(lp.objective, granularity);
    *iterations = 0;
    *deactivated = 0;
    const auto t0 = std::chrono::steady_clock::now();
    const double budget = ipc.time_limit_s;
    IpResult last;
    for (int guard = 0; guard < 100000; ++guard) {
        IlpModel restricted = model;
        int off = 0;
        for (std::size_t j = 0; j < restricted.vars.size(); ++j) {
            if (restricted.vars[j].kind != VarKind::Binary) continue;
            if (lp.x[j] > eps) continue;
            if (lp.objective + lp.reduced_cost[j] < target - eps) {
                restricted.vars[j].ub = 0.0;
                ++off;
            }
        }
        *deactivated = off;
        ++*iterations;
        ipc.target_bound = target;
        const double used =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ipc.time_limit_s = budget - used;
        if (ipc.time_limit_s <= 0) {
            last.status = IpStatus::TimeLimit;
            return last;
        }
        IpResult res = backend.solve_ip(restricted, ipc);
        last = res;
        if (res.status == IpStatus::TimeLimit || res.status == IpStatus::MemoryLimit) return res;
        if (!res.target_refuted && res.status == IpStatus::Optimal) return res;
        target -= granularity;
        if (target < -eps && model.obj_constant <= 0) {
            // Nothing left to prove: the empty solution is optimal.
            res.status = IpStatus::Optimal;
            return res;
        }
    }
    throw std::logic_error("destructive bound loop failed to converge");
}

}  // namespace

SolveOutcome solve_method(const Instance& inst, CycleModel cm, ChainModel chm,
                          const SolveConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveOutcome out;
    const VertexOrder order =
        chm == ChainModel::Hybrid ? VertexOrder::Identity : preferred_order(cm);
    const ReindexResult rx = reindex(inst, order);
    const Instance& I = rx.instance;
    const ModelBuild build = build_method(I, cm, chm, cfg);
    out.stats = build.stats;

    const auto backend = get_backend(cfg.backend);
    const LpResult lp = backend->solve_lp(build.model);
    out.lp_objective = lp.objective;

    IpConfig ipc;
    ipc.time_limit_s = cfg.time_limit_s;
    const Rational gran = weight_granularity(inst);
    ipc.granularity = gran.to_double();
    if (!build.separators.empty()) {
        ipc.lazy_separator = [&](const std::vector<double>& x) { return separate(I, build, x); };
        ipc.fractional_separator = [&](const std::vector<double>& x) {
            return separate_fractional(I, build, x);
        };
        // Constraint generation only learns cuts at integral points; best-bound
        // search can wander a flat relaxation plateau forever without reaching
        // one, so dive depth-first whenever separators are attached.
        ipc.depth_first = true;
    }

    // The hybrid search tends to reject integral leaves via lazy length cuts
    // for a long time before reaching a feasible one, so give it a rounding
    // heuristic: score every feasible cycle and chain by its relaxation
    // weight and greedily pack a vertex-disjoint subset.
    std::vector<std::vector<int>> cand_vars;   // model variables per candidate
    std::vector<std::vector<int>> cand_verts;  // vertices each candidate occupies
    if (chm == ChainModel::Hybrid) {
        std::map<std::pair<int, int>, int> var_of_arc;
        for (std::size_t j = 0; j < build.var_meta.size(); ++j)
            if (build.var_meta[j].type == VarMeta::Type::HybridArc)
                var_of_arc[{build.var_meta[j].u, build.var_meta[j].v}] = static_cast<int>(j);
        auto try_add = [&](const std::vector<std::pair<int, int>>& arcs, std::vector<int> verts) {
            std::vector<int> vars;
            for (const auto& a : arcs) {
                const auto it = var_of_arc.find(a);
                if (it == var_of_arc.end()) {
                    // Without a terminal-arc variable the donation to the
                    // waiting list is implicit; any other gap means the arc
                    // was reduced away and the candidate is unusable.
                    if (a.second == kTau && build.tau_mode == TauMode::Implicit) continue;
                    return;
                }
                vars.push_back(it->second);
            }
            cand_vars.push_back(std::move(vars));
            cand_verts.push_back(std::move(verts));
        };
        for (const Cycle& c : enumerate_cycles(I, cfg.K)) {
            std::vector<std::pair<int, int>> arcs;
            for (std::size_t p = 0; p < c.vertices.size(); ++p)
                arcs.push_back({c.vertices[p], c.vertices[(p + 1) % c.vertices.size()]});
            try_add(arcs, c.vertices);
        }
        for (const Chain& c : enumerate_chains(I, cfg.L)) {
            std::vector<std::pair<int, int>> arcs;
            std::vector<int> verts{c.ndd};
            int prev = c.ndd;
            for (int r : c.rdps) {
                arcs.push_back({prev, r});
                verts.push_back(r);
                prev = r;
            }
            arcs.push_back({prev, kTau});
            try_add(arcs, std::move(verts));
        }
        // Past this size the per-node scoring cost outweighs the benefit.
        if (cand_vars.size() > 50000) {
            cand_vars.clear();
            cand_verts.clear();
        }
    }
    if (!cand_vars.empty()) {
        const int nverts = I.vertex_count();
        ipc.primal_heuristic = [cand_vars = std::move(cand_vars),
                                cand_verts = std::move(cand_verts), nverts,
                                &model = build.model](const std::vector<double>& x) {
            const std::size_t m = cand_vars.size();
            std::vector<double> score(m, 0.0);
            std::vector<std::size_t> order(m);
            for (std::size_t i = 0; i < m; ++i) {
                for (int j : cand_vars[i]) score[i] += x[j];
                score[i] /= static_cast<double>(cand_vars[i].size());
                order[i] = i;
            }
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (score[a] != score[b]) return score[a] > score[b];
                return a < b;
            });
            std::vector<char> used(nverts + 1, 0);
            std::vector<double> hx(model.vars.size(), 0.0);
            double val = model.obj_constant;
            for (std::size_t i : order) {
                bool free = true;
                for (int v : cand_verts[i])
                    if (used[v]) {
                        free = false;
                        break;
                    }
                if (!free) continue;
                for (int v : cand_verts[i]) used[v] = 1;
                for (int j : cand_vars[i]) {
                    hx[j] = 1.0;
                    val += model.vars[j].obj;
                }
            }
            return std::pair<double, std::vector<double>>(val, std::move(hx));
        };
    }

    IpResult res;
    if (cfg.rcvf && lp.status == LpStatus::Optimal) {
        res = run_rcvf(*backend, build.model, lp, ipc, ipc.granularity, &out.rcvf_iterations,
                       &out.rcvf_deactivated);
    } else {
        res = backend->solve_ip(build.model, ipc);
    }
    out.status = res.status;
    out.ip_objective = res.objective;
    out.best_bound = res.best_bound;
    out.nodes = res.nodes;
    out.lazy_added = res.lazy_added;

    if ((res.status == IpStatus::Optimal || res.status == IpStatus::Feasible ||
         res.status == IpStatus::TimeLimit) &&
        !res.x.empty()) {
        const ExchangeSet local = extract_solution(I, build, res.x);
        const double expect = local.objective.to_double();
        if (res.status == IpStatus::Optimal &&
            std::fabs(expect - res.objective) > 1e-6 * (1.0 + std::fabs(expect)))
            throw std::logic_error("extracted solution does not match the model objective");
        // Map back into the caller's labels.
        for (const Cycle& c : local.cycles) {
            std::vector<int> verts;
            for (int v : c.vertices) verts.push_back(rx.to_old(v));
            out.solution.cycles.push_back(make_cycle(inst, std::move(verts)));
        }
        for (const Chain& c : local.chains) {
            std::vector<int> rdps;
            for (int v : c.rdps) rdps.push_back(rx.to_old(v));
            out.solution.chains.push_back(make_chain(inst, c.ndd, std::move(rdps)));
        }
        for (const Cycle& c : out.solution.cycles) out.solution.objective += c.weight;
        for (const Chain& c : out.solution.chains) out.solution.objective += c.weight;
    }
    out.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

std::string to_string(CycleModel m) {
    switch (m) {
        case CycleModel::None: return "none";
        case CycleModel::Cf: return "cf";
        case CycleModel::Hcf: return "hcf";
        case CycleModel::Ef: return "ef";
        case CycleModel::Eef: return "eef";
        case CycleModel::Pief: return "pief";
    }
    return "?";
}

std::string to_string(ChainModel m) {
    switch (m) {
        case ChainModel::None: return "none";
        case ChainModel::Cf: return "cf";
        case ChainModel::Hcf: return "hcf";
        case ChainModel::EfExp: return "ef-exp";
        case ChainModel::EfMtz: return "ef-mtz";
        case ChainModel::EefExp: return "eef-exp";
        case ChainModel::EefMtz: return "eef-mtz";
        case ChainModel::Pief: return "pief";
        case ChainModel::Hybrid: return "hybrid";
    }
    return "?";
}

CycleModel cycle_model_from_string(const std::string& s) {
    if (s == "none") return CycleModel::None;
    if (s == "cf") return CycleModel::Cf;
    if (s == "hcf") return CycleModel::Hcf;
    if (s == "ef") return CycleModel::Ef;
    if (s == "eef") return CycleModel::Eef;
    if (s == "pief") return CycleModel::Pief;
    throw std::invalid_argument("unknown cycle model: " + s);
}

ChainModel chain_model_from_string(const std::string& s) {
    if (s == "none") return ChainModel::None;
    if (s == "cf") return ChainModel::Cf;
    if (s == "hcf") return ChainModel::Hcf;
    if (s == "ef-exp") return ChainModel::EfExp;
    if (s == "ef-mtz") return ChainModel::EfMtz;
    if (s == "eef-exp") return ChainModel::EefExp;
    if (s == "eef-mtz") return ChainModel::EefMtz;
    if (s == "pief") return ChainModel::Pief;
    if (s == "hybrid") return ChainModel::Hybrid;
    throw std::invalid_argument("unknown chain model: " + s);
}

}  // namespace kex
