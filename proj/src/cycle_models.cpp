#include <algorithm>
#include <map>

#include "kex/models.hpp"
#include "kex/reduction.hpp"

namespace kex {

VertexOrder preferred_order(CycleModel m) {
    switch (m) {
        case CycleModel::Hcf:
        case CycleModel::Pief: return VertexOrder::DegreeDesc;
        case CycleModel::Eef: return VertexOrder::DegreeAsc;
        default: return VertexOrder::Identity;
    }
}

namespace {

std::string arc_name(int u, int v) {
    return std::to_string(u) + "_" + (v == kTau ? "t" : std::to_string(v));
}

// Ensures an "at most one exchange per pair" row exists for the RDP and
// returns its id; terms are appended by the callers.
int ensure_use_row(ModelBuild& b, int v) {
    auto it = b.rdp_use_row.find(v);
    if (it != b.rdp_use_row.end()) return it->second;
    const int id = b.model.add_row({}, Sense::Le, 1.0, "use_" + std::to_string(v));
    b.rdp_use_row[v] = id;
    return id;
}

void add_use_term(ModelBuild& b, int v, int var) {
    b.model.rows[ensure_use_row(b, v)].terms.push_back({var, 1.0});
}

void finish(ModelBuild& b) {
    b.stats.vars = static_cast<int>(b.model.vars.size());
    b.stats.constraints = static_cast<int>(b.model.rows.size());
}

}  // namespace

ModelBuild build_cf_cycle(const Instance& inst, int K) {
    ModelBuild b;
    b.cycle_kind = CycleModel::Cf;
    b.K = K;
    b.cycles = enumerate_cycles(inst, K);
    for (std::size_t i = 0; i < b.cycles.size(); ++i) {
        const Cycle& c = b.cycles[i];
        std::string nm = "c";
        for (int v : c.vertices) nm += "_" + std::to_string(v);
        const int var = b.model.add_var(VarKind::Binary, 0, 1, c.weight.to_double(), nm);
        VarMeta meta;
        meta.type = VarMeta::Type::CycleSel;
        meta.index = static_cast<int>(i);
        b.var_meta.push_back(meta);
        for (int v : c.vertices) add_use_term(b, v, var);
    }
    b.stats.pre_reduction_vars = static_cast<int>(b.cycles.size());
    finish(b);
    return b;
}

ModelBuild build_hcf_cycle(const Instance& inst, int K) {
    ModelBuild b;
    b.cycle_kind = CycleModel::Hcf;
    b.K = K;
    b.half_cycles = enumerate_half_cycles(inst, K);
    // Pairing keys: one equality per unordered endpoint pair {u,v}, u < v,
    // matching halves u->v against halves v->u.
    std::map<std::pair<int, int>, std::pair<std::vector<int>, std::vector<int>>> pairing;
    for (std::size_t i = 0; i < b.half_cycles.size(); ++i) {
        const HalfCycle& h = b.half_cycles[i];
        std::string nm = "h";
        for (int v : h.vertices) nm += "_" + std::to_string(v);
        const int var = b.model.add_var(VarKind::Binary, 0, 1, h.weight.to_double(), nm);
        VarMeta meta;
        meta.type = VarMeta::Type::HalfCycleSel;
        meta.index = static_cast<int>(i);
        b.var_meta.push_back(meta);
        // Packing charges the intermediates plus the start vertex, so each
        // vertex of a reconstructed cycle is charged exactly once.
        if (h.is_loop()) {
            add_use_term(b, h.vertices[0], var);
        } else {
            for (std::size_t p = 0; p + 1 < h.vertices.size(); ++p)
                add_use_term(b, h.vertices[p], var);
            const int u = h.start(), v = h.end();
            if (u < v)
                pairing[{u, v}].first.push_back(var);
            else
                pairing[{v, u}].second.push_back(var);
        }
    }
    for (const auto& [key, sides] : pairing) {
        std::vector<std::pair<int, double>> terms;
        for (int var : sides.first) terms.push_back({var, 1.0});
        for (int var : sides.second) terms.push_back({var, -1.0});
        b.model.add_row(std::move(terms), Sense::Eq, 0.0,
                        "pair_" + std::to_string(key.first) + "_" + std::to_string(key.second));
    }
    b.stats.pre_reduction_vars = static_cast<int>(b.half_cycles.size());
    finish(b);
    return b;
}

ModelBuild build_ef_cycle(const Instance& inst, int K) {
    ModelBuild b;
    b.cycle_kind = CycleModel::Ef;
    b.K = K;
    int pre = 0;
    for (const Arc& a : inst.arcs())
        if (inst.is_rdp(a.from)) ++pre;
    b.stats.pre_reduction_vars = pre;
    const ReducedGraph red = reduce_for_model(inst, ReductionFamily::EfCycle, K, 0);
    std::map<int, std::vector<std::pair<int, double>>> inflow, outflow;
    for (std::size_t i = 0; i < inst.arcs().size(); ++i) {
        if (!red.arc_kept[i]) continue;
        const Arc& a = inst.arcs()[i];
        const int var = b.model.add_var(VarKind::Binary, 0, 1,
                                        inst.weights()[i].to_double(), "x" + arc_name(a.from, a.to));
        VarMeta meta;
        meta.type = VarMeta::Type::CycleArc;
        meta.u = a.from;
        meta.v = a.to;
        b.var_meta.push_back(meta);
        add_use_term(b, a.to, var);  // in-degree row doubles as the use row
        inflow[a.to].push_back({var, 1.0});
        outflow[a.from].push_back({var, 1.0});
    }
    for (int v = 1; v <= inst.rdp_count(); ++v) {
        auto fin = inflow.find(v);
        auto fout = outflow.find(v);
        if (fin == inflow.end() && fout == outflow.end()) continue;
        std::vector<std::pair<int, double>> terms;
        if (fin != inflow.end()) terms.insert(terms.end(), fin->second.begin(), fin->second.end());
        if (fout != outflow.end())
            for (auto [var, c] : fout->second) terms.push_back({var, -c});
        b.model.add_row(std::move(terms), Sense::Eq, 0.0, "flow_" + std::to_string(v));
    }
    if (K < inst.rdp_count()) {
        SeparatorSpec sep;
        sep.family = SeparatorSpec::Family::CycleLongCycle;
        sep.bound = K;
        b.separators.push_back(sep);
    }
    finish(b);
    return b;
}

ModelBuild build_eef_cycle(const Instance& inst, int K) {
    ModelBuild b;
    b.cycle_kind = CycleModel::Eef;
    b.K = K;
    const int r = inst.rdp_count();
    for (int s = 1; s <= r; ++s) {
        const SubgraphReduction red = reduce_subgraph(inst, s, SubgraphFamily::EefCycle, K);
        // Structural (pre-pruning) arc count of this copy.
        for (const Arc& a : inst.arcs()) {
            if (!inst.is_rdp(a.from) || a.from < s || a.to < s) continue;
            if (a.from == a.to && a.from != s) continue;
            ++b.stats.pre_reduction_vars;
        }
        std::map<int, std::vector<std::pair<int, double>>> inflow, outflow;
        std::vector<std::pair<int, double>> all_terms, start_terms;
        for (std::size_t i = 0; i < inst.arcs().size(); ++i) {
            if (!red.arc_kept[i]) continue;
            const Arc& a = inst.arcs()[i];
            const int var = b.model.add_var(
                VarKind::Binary, 0, 1, inst.weights()[i].to_double(),
                "x" + std::to_string(s) + "_" + arc_name(a.from, a.to));
            VarMeta meta;
            meta.type = VarMeta::Type::SubgraphCycleArc;
            meta.s = s;
            meta.u = a.from;
            meta.v = a.to;
            b.var_meta.push_back(meta);
            add_use_term(b, a.to, var);
            inflow[a.to].push_back({var, 1.0});
            outflow[a.from].push_back({var, 1.0});
            all_terms.push_back({var, 1.0});
            if (a.from == s) start_terms.push_back({var, 1.0});
        }
        if (all_terms.empty()) continue;
        for (int v = s; v <= r; ++v) {
            auto fin = inflow.find(v);
            auto fout = outflow.find(v);
            if (fin == inflow.end() && fout == outflow.end()) continue;
            std::vector<std::pair<int, double>> terms;
            if (fin != inflow.end())
                terms.insert(terms.end(), fin->second.begin(), fin->second.end());
            if (fout != outflow.end())
                for (auto [var, c] : fout->second) terms.push_back({var, -c});
            b.model.add_row(std::move(terms), Sense::Eq, 0.0,
                            "flow_" + std::to_string(s) + "_" + std::to_string(v));
        }
        // Arcs may appear in this copy only if a cycle through its root does,
        // and then at most K of them.
        std::vector<std::pair<int, double>> cap = all_terms;
        for (auto [var, c] : start_terms) cap.push_back({var, -static_cast<double>(K)});
        b.model.add_row(std::move(cap), Sense::Le, 0.0, "cap_" + std::to_string(s));
    }
    finish(b);
    return b;
}

ModelBuild build_pief_cycle(const Instance& inst, int K, PositionMethod method) {
    ModelBuild b;
    b.cycle_kind = CycleModel::Pief;
    b.K = K;
    const auto sets = position_sets_cycle(inst, K, method);
    for (const auto& sub : sets) {
        const int s = sub.root;
        // key: (vertex, position) -> terms of the positional-flow balance
        std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> balance;
        for (const auto& pa : sub.arcs) {
            for (int k : pa.positions) {
                const int var = b.model.add_var(
                    VarKind::Binary, 0, 1, inst.arc_weight(pa.from, pa.to).to_double(),
                    "x" + std::to_string(s) + "_" + arc_name(pa.from, pa.to) + "_" +
                        std::to_string(k));
                VarMeta meta;
                meta.type = VarMeta::Type::PosCycleArc;
                meta.s = s;
                meta.u = pa.from;
                meta.v = pa.to;
                meta.k = k;
                b.var_meta.push_back(meta);
                add_use_term(b, pa.to, var);
                // Entering v at position k must be matched by leaving at k+1.
                if (pa.to != s && k <= K - 1) balance[{pa.to, k}].push_back({var, -1.0});
                if (pa.from != s && k >= 2) balance[{pa.from, k - 1}].push_back({var, 1.0});
            }
        }
        for (auto& [key, terms] : balance)
            b.model.add_row(std::move(terms), Sense::Eq, 0.0,
                            "pflow_" + std::to_string(s) + "_" + std::to_string(key.first) +
                                "_" + std::to_string(key.second));
    }
    b.stats.pre_reduction_vars = static_cast<int>(b.model.vars.size());
    finish(b);
    return b;
}

}  // namespace kex
