#include <algorithm>
#include <map>

#include "kex/models.hpp"
#include "kex/reduction.hpp"

namespace kex {

namespace {

std::string arc_name(int u, int v) {
    return std::to_string(u) + "_" + (v == kTau ? "t" : std::to_string(v));
}

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

// Every NDD not feeding a chain implicitly donates straight to the terminal;
// folding that credit into the objective keeps the two encodings equal.
double implicit_constant(const Instance& inst) {
    double c = 0.0;
    for (int v = inst.rdp_count() + 1; v <= inst.vertex_count(); ++v)
        c += inst.tau_weight(v).to_double();
    return c;
}

// Objective of an arc variable in a flow-style chain model: under the
// implicit-terminal encoding each unit of inflow earns the head's terminal
// weight and each unit of outflow returns the tail's.
double arc_obj(const Instance& inst, int u, int v, TauMode tau) {
    if (v == kTau) return inst.tau_weight(u).to_double();
    double w = inst.arc_weight(u, v).to_double();
    if (tau == TauMode::Implicit)
        w += inst.tau_weight(v).to_double() - inst.tau_weight(u).to_double();
    return w;
}

}  // namespace

NormalizedL normalize_L(const Instance& inst, int L) {
    NormalizedL n;
    if (L == kUnboundedL) {
        n.L = inst.rdp_count() + 1;
        n.drop_long_chain_cuts = true;
        n.split_subgraph_cap = true;
    } else {
        n.L = L;
    }
    return n;
}

ModelBuild build_cf_chain(const Instance& inst, int L, TauMode tau) {
    ModelBuild b;
    b.chain_kind = ChainModel::Cf;
    b.tau_mode = tau;
    b.L = L;
    auto all = enumerate_chains(inst, L);
    b.stats.pre_reduction_vars = static_cast<int>(all.size());
    std::map<int, std::vector<std::pair<int, double>>> ndd_terms;
    if (tau == TauMode::Implicit) b.model.obj_constant = implicit_constant(inst);
    for (const Chain& c : all) {
        if (tau == TauMode::Implicit && c.rdps.empty()) continue;
        double obj = c.weight.to_double();
        if (tau == TauMode::Implicit) obj -= inst.tau_weight(c.ndd).to_double();
        b.chains.push_back(c);
        std::string nm = "y" + std::to_string(c.ndd);
        for (int v : c.rdps) nm += "_" + std::to_string(v);
        const int var = b.model.add_var(VarKind::Binary, 0, 1, obj, nm);
        VarMeta meta;
        meta.type = VarMeta::Type::ChainSel;
        meta.index = static_cast<int>(b.chains.size()) - 1;
        b.var_meta.push_back(meta);
        for (int v : c.rdps) add_use_term(b, v, var);
        ndd_terms[c.ndd].push_back({var, 1.0});
    }
    for (auto& [n, terms] : ndd_terms)
        b.model.add_row(std::move(terms), Sense::Le, 1.0, "ndd_" + std::to_string(n));
    finish(b);
    return b;
}

ModelBuild build_hcf_chain(const Instance& inst, int L, TauMode tau) {
    ModelBuild b;
    b.chain_kind = ChainModel::Hcf;
    b.tau_mode = tau;
    b.L = L;
    HalfChainSets sets = enumerate_half_chains(inst, L);
    if (tau == TauMode::Implicit) b.model.obj_constant = implicit_constant(inst);

    std::map<int, std::vector<std::pair<int, double>>> ndd_terms;
    // matching[v]: firsts ending at v (+1) against seconds starting at v (-1)
    std::map<int, std::vector<std::pair<int, double>>> matching;

    auto add_half = [&](const HalfChain& h) {
        b.half_chains.push_back(h);
        double obj = h.weight.to_double();
        std::string nm;
        switch (h.kind) {
            case HalfChain::Kind::First: {
                if (tau == TauMode::Implicit) obj -= inst.tau_weight(h.ndd).to_double();
                nm = "hf" + std::to_string(h.ndd);
                for (int v : h.rdps) nm += "_" + std::to_string(v);
                break;
            }
            case HalfChain::Kind::Second: {
                nm = "hs";
                for (int v : h.rdps) nm += "_" + std::to_string(v);
                nm += "_t";
                break;
            }
            case HalfChain::Kind::LengthOne: nm = "ho" + std::to_string(h.ndd); break;
        }
        const int var = b.model.add_var(VarKind::Binary, 0, 1, obj, nm);
        VarMeta meta;
        meta.type = VarMeta::Type::HalfChainSel;
        meta.index = static_cast<int>(b.half_chains.size()) - 1;
        b.var_meta.push_back(meta);
        switch (h.kind) {
            case HalfChain::Kind::First:
                ndd_terms[h.ndd].push_back({var, 1.0});
                for (int v : h.rdps) add_use_term(b, v, var);
                matching[h.end_rdp()].push_back({var, 1.0});
                break;
            case HalfChain::Kind::Second:
                // The shared pair is charged by its first half.
                for (std::size_t p = 1; p < h.rdps.size(); ++p) add_use_term(b, h.rdps[p], var);
                matching[h.start_rdp()].push_back({var, -1.0});
                break;
            case HalfChain::Kind::LengthOne:
                ndd_terms[h.ndd].push_back({var, 1.0});
                break;
        }
    };
    for (const auto& h : sets.firsts) add_half(h);
    for (const auto& h : sets.seconds) add_half(h);
    if (tau == TauMode::Explicit)
        for (const auto& h : sets.length_ones) add_half(h);

    for (auto& [n, terms] : ndd_terms)
        b.model.add_row(std::move(terms), Sense::Le, 1.0, "ndd_" + std::to_string(n));
    for (auto& [v, terms] : matching)
        b.model.add_row(std::move(terms), Sense::Eq, 0.0, "match_" + std::to_string(v));
    b.stats.pre_reduction_vars = static_cast<int>(sets.firsts.size() + sets.seconds.size() +
                                                  sets.length_ones.size());
    finish(b);
    return b;
}

namespace {

// Shared base of the arc-flow chain models: one binary per surviving arc,
// at most one departure per NDD, at most one arrival per pair, and flow
// conservation at every pair (an inequality when the terminal is implicit).
struct EfChainBase {
    std::map<int, std::vector<std::pair<int, double>>> inflow, outflow, ndd_out;
};

EfChainBase build_ef_chain_base(ModelBuild& b, const Instance& inst, int L, TauMode tau,
                                VarMeta::Type type) {
    const ReducedGraph red = reduce_for_model(inst, ReductionFamily::EfChain, 0, L);
    EfChainBase base;
    auto add_arc = [&](int u, int v, double obj) {
        const int var = b.model.add_var(VarKind::Binary, 0, 1, obj,
                                        "y" + arc_name(u, v));
        VarMeta meta;
        meta.type = type;
        meta.u = u;
        meta.v = v;
        b.var_meta.push_back(meta);
        if (v != kTau) {
            add_use_term(b, v, var);
            base.inflow[v].push_back({var, 1.0});
        }
        if (inst.is_ndd(u))
            base.ndd_out[u].push_back({var, 1.0});
        else
            base.outflow[u].push_back({var, 1.0});
        return var;
    };
    for (std::size_t i = 0; i < inst.arcs().size(); ++i) {
        if (!red.arc_kept[i]) continue;
        const Arc& a = inst.arcs()[i];
        add_arc(a.from, a.to, arc_obj(inst, a.from, a.to, tau));
    }
    if (tau == TauMode::Explicit)
        for (int v = 1; v <= inst.vertex_count(); ++v)
            if (red.tau_arc_kept[v - 1]) add_arc(v, kTau, inst.tau_weight(v).to_double());
    for (auto& [n, terms] : base.ndd_out)
        b.model.add_row(terms, Sense::Le, 1.0, "ndd_" + std::to_string(n));
    for (int v = 1; v <= inst.rdp_count(); ++v) {
        auto fin = base.inflow.find(v);
        auto fout = base.outflow.find(v);
        if (fin == base.inflow.end() && fout == base.outflow.end()) continue;
        std::vector<std::pair<int, double>> terms;
        if (fin != base.inflow.end())
            terms.insert(terms.end(), fin->second.begin(), fin->second.end());
        if (fout != base.outflow.end())
            for (auto [var, c] : fout->second) terms.push_back({var, -c});
        // Explicit: what comes in must go out (possibly to the terminal);
        // implicit: a chain may simply stop here.
        b.model.add_row(std::move(terms), tau == TauMode::Explicit ? Sense::Eq : Sense::Ge, 0.0,
                        "flow_" + std::to_string(v));
    }
    return base;
}

}  // namespace

ModelBuild build_ef_chain_exp(const Instance& inst, int L, TauMode tau) {
    ModelBuild b;
    b.chain_kind = ChainModel::EfExp;
    b.tau_mode = tau;
    b.L = L;
    if (tau == TauMode::Implicit) b.model.obj_constant = implicit_constant(inst);
    build_ef_chain_base(b, inst, L, tau, VarMeta::Type::ChainArc);
    b.stats.pre_reduction_vars = static_cast<int>(inst.arcs().size()) +
                                 (tau == TauMode::Explicit ? inst.vertex_count() : 0);
    if (L <= inst.rdp_count()) {
        SeparatorSpec sep;
        sep.family = SeparatorSpec::Family::ChainLongChain;
        sep.bound = L;
        b.separators.push_back(sep);
    }
    SeparatorSpec cyc;
    cyc.family = SeparatorSpec::Family::ChainAnyCycle;
    cyc.bound = L - 1;
    b.separators.push_back(cyc);
    finish(b);
    return b;
}

ModelBuild build_ef_chain_mtz(const Instance& inst, int L, TauMode tau) {
    ModelBuild b;
    b.chain_kind = ChainModel::EfMtz;
    b.tau_mode = tau;
    b.L = L;
    if (tau == TauMode::Implicit) b.model.obj_constant = implicit_constant(inst);
    build_ef_chain_base(b, inst, L, tau, VarMeta::Type::ChainArc);
    b.stats.pre_reduction_vars = static_cast<int>(inst.arcs().size()) +
                                 (tau == TauMode::Explicit ? inst.vertex_count() : 0);
    // Timestamp per pair that still has a pair-to-pair arc.
    std::map<std::pair<int, int>, int> arc_var;
    for (std::size_t j = 0; j < b.var_meta.size(); ++j) {
        const VarMeta& m = b.var_meta[j];
        if (m.type == VarMeta::Type::ChainArc && m.v != kTau && inst.is_rdp(m.u))
            arc_var[{m.u, m.v}] = static_cast<int>(j);
    }
    std::map<int, int> ts;
    auto ensure_ts = [&](int v) {
        auto it = ts.find(v);
        if (it != ts.end()) return it->second;
        const int var = b.model.add_var(VarKind::Continuous, 1.0, static_cast<double>(L - 1),
                                        0.0, "ts" + std::to_string(v));
        VarMeta meta;
        meta.type = VarMeta::Type::Timestamp;
        meta.v = v;
        b.var_meta.push_back(meta);
        ts[v] = var;
        return var;
    };
    for (const auto& [uv, var] : arc_var) {
        const auto [u, v] = uv;
        if (u == v) {
            b.model.add_row({{var, static_cast<double>(L - 1)}}, Sense::Le,
                            static_cast<double>(L - 2), "mtz_" + arc_name(u, v));
            continue;
        }
        std::vector<std::pair<int, double>> terms = {
            {ensure_ts(u), 1.0}, {ensure_ts(v), -1.0}, {var, static_cast<double>(L - 1)}};
        auto rev = arc_var.find({v, u});
        if (rev != arc_var.end() && L >= 3)
            terms.push_back({rev->second, static_cast<double>(L - 3)});
        b.model.add_row(std::move(terms), Sense::Le, static_cast<double>(L - 2),
                        "mtz_" + arc_name(u, v));
    }
    finish(b);
    return b;
}

namespace {

ModelBuild build_eef_chain(const Instance& inst, int L, TauMode tau, bool with_mtz,
                           bool split_cap) {
    ModelBuild b;
    b.chain_kind = with_mtz ? ChainModel::EefMtz : ChainModel::EefExp;
    b.tau_mode = tau;
    b.L = L;
    if (tau == TauMode::Implicit) b.model.obj_constant = implicit_constant(inst);
    const int r = inst.rdp_count();
    // Aggregated reverse/forward sums for the MTZ rows.
    std::map<std::pair<int, int>, std::vector<int>> arc_vars_by_uv;

    for (int s = r + 1; s <= inst.vertex_count(); ++s) {
        const SubgraphReduction red = reduce_subgraph(inst, s, SubgraphFamily::EefChain, L);
        b.stats.pre_reduction_vars +=
            static_cast<int>(inst.successors(s).size());
        for (const Arc& a : inst.arcs())
            if (inst.is_rdp(a.from) && a.from != a.to) ++b.stats.pre_reduction_vars;
        if (tau == TauMode::Explicit) b.stats.pre_reduction_vars += r + 1;  // terminal arcs

        std::map<int, std::vector<std::pair<int, double>>> inflow, outflow;
        std::vector<std::pair<int, double>> all_terms, start_terms;
        auto add_arc = [&](int u, int v, double obj) {
            const int var = b.model.add_var(
                VarKind::Binary, 0, 1, obj,
                "y" + std::to_string(s) + "_" + arc_name(u, v));
            VarMeta meta;
            meta.type = VarMeta::Type::SubgraphChainArc;
            meta.s = s;
            meta.u = u;
            meta.v = v;
            b.var_meta.push_back(meta);
            if (v != kTau) {
                add_use_term(b, v, var);
                inflow[v].push_back({var, 1.0});
            }
            if (u == s) {
                if (v != kTau) start_terms.push_back({var, 1.0});
            } else if (inst.is_rdp(u)) {
                outflow[u].push_back({var, 1.0});
            }
            // The lone terminal donation s->tau is a complete length-1 chain;
            // it must not be charged against the chain-length cap.
            if (!(u == s && v == kTau)) all_terms.push_back({var, 1.0});
            if (inst.is_rdp(u) && v != kTau) arc_vars_by_uv[{u, v}].push_back(var);
            return var;
        };
        std::vector<std::pair<int, double>> ndd_row;
        for (std::size_t i = 0; i < inst.arcs().size(); ++i) {
            if (!red.arc_kept[i]) continue;
            const Arc& a = inst.arcs()[i];
            const int var = add_arc(a.from, a.to, arc_obj(inst, a.from, a.to, tau));
            if (a.from == s) ndd_row.push_back({var, 1.0});
        }
        if (tau == TauMode::Explicit) {
            for (int v = 1; v <= r; ++v)
                if (red.tau_arc_kept[v - 1]) add_arc(v, kTau, inst.tau_weight(v).to_double());
            if (red.tau_arc_kept[s - 1]) {
                const int var = add_arc(s, kTau, inst.tau_weight(s).to_double());
                ndd_row.push_back({var, 1.0});
            }
        }
        if (!ndd_row.empty())
            b.model.add_row(std::move(ndd_row), Sense::Le, 1.0, "ndd_" + std::to_string(s));
        for (int v = 1; v <= r; ++v) {
            auto fin = inflow.find(v);
            auto fout = outflow.find(v);
            if (fin == inflow.end() && fout == outflow.end()) continue;
            std::vector<std::pair<int, double>> terms;
            if (fin != inflow.end())
                terms.insert(terms.end(), fin->second.begin(), fin->second.end());
            if (fout != outflow.end())
                for (auto [var, c] : fout->second) terms.push_back({var, -c});
            b.model.add_row(std::move(terms), tau == TauMode::Explicit ? Sense::Eq : Sense::Ge,
                            0.0, "flow_" + std::to_string(s) + "_" + std::to_string(v));
        }
        if (all_terms.empty()) continue;
        if (split_cap) {
            // Unbounded length: the cap is vacuous, keep only the linkage
            // "no departures from v unless the root started a chain".
            for (int v = 1; v <= r; ++v) {
                auto fout = outflow.find(v);
                if (fout == outflow.end()) continue;
                std::vector<std::pair<int, double>> terms = fout->second;
                for (auto [var, c] : start_terms) terms.push_back({var, -c});
                b.model.add_row(std::move(terms), Sense::Le, 0.0,
                                "link_" + std::to_string(s) + "_" + std::to_string(v));
            }
        } else {
            const double cap = tau == TauMode::Explicit ? static_cast<double>(L)
                                                        : static_cast<double>(L - 1);
            std::vector<std::pair<int, double>> terms = all_terms;
            for (auto [var, c] : start_terms) terms.push_back({var, -cap * c});
            b.model.add_row(std::move(terms), Sense::Le, 0.0, "cap_" + std::to_string(s));
        }
    }
    if (with_mtz) {
        std::map<int, int> ts;
        auto ensure_ts = [&](int v) {
            auto it = ts.find(v);
            if (it != ts.end()) return it->second;
            const int var = b.model.add_var(VarKind::Continuous, 1.0,
                                            static_cast<double>(L - 1), 0.0,
                                            "ts" + std::to_string(v));
            VarMeta meta;
            meta.type = VarMeta::Type::Timestamp;
            meta.v = v;
            b.var_meta.push_back(meta);
            ts[v] = var;
            return var;
        };
        for (const auto& [uv, vars] : arc_vars_by_uv) {
            const auto [u, v] = uv;
            std::vector<std::pair<int, double>> terms;
            if (u != v) {
                terms.push_back({ensure_ts(u), 1.0});
                terms.push_back({ensure_ts(v), -1.0});
            }
            for (int var : vars) terms.push_back({var, static_cast<double>(L - 1)});
            auto rev = arc_vars_by_uv.find({v, u});
            if (u != v && rev != arc_vars_by_uv.end() && L >= 3)
                for (int var : rev->second) terms.push_back({var, static_cast<double>(L - 3)});
            b.model.add_row(std::move(terms), Sense::Le, static_cast<double>(L - 2),
                            "mtz_" + arc_name(u, v));
        }
    } else {
        SeparatorSpec cyc;
        cyc.family = SeparatorSpec::Family::ChainAnyCycle;
        cyc.bound = L - 2;
        cyc.subgraph_vars = true;
        b.separators.push_back(cyc);
    }
    finish(b);
    return b;
}

}  // namespace

ModelBuild build_eef_chain_exp(const Instance& inst, int L, TauMode tau) {
    return build_eef_chain(inst, L, tau, /*with_mtz=*/false,
                           /*split_cap=*/L > inst.rdp_count());
}

ModelBuild build_eef_chain_mtz(const Instance& inst, int L, TauMode tau) {
    return build_eef_chain(inst, L, tau, /*with_mtz=*/true,
                           /*split_cap=*/L > inst.rdp_count());
}

ModelBuild build_pief_chain(const Instance& inst, int L, TauMode tau, PositionMethod method) {
    ModelBuild b;
    b.chain_kind = ChainModel::Pief;
    b.tau_mode = tau;
    b.L = L;
    if (tau == TauMode::Implicit) b.model.obj_constant = implicit_constant(inst);
    const auto sets = position_sets_chain(inst, L, method);
    int pre = 0;
    for (const auto& pa : sets) pre += static_cast<int>(pa.positions.size());
    b.stats.pre_reduction_vars = pre;

    std::map<int, std::vector<std::pair<int, double>>> ndd_rows;
    std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> balance;
    const int flow_k_max = tau == TauMode::Explicit ? L - 1 : L - 2;
    for (const auto& pa : sets) {
        if (tau == TauMode::Implicit && pa.to == kTau) continue;
        for (int k : pa.positions) {
            const double obj = pa.to == kTau ? inst.tau_weight(pa.from).to_double()
                                             : arc_obj(inst, pa.from, pa.to, tau);
            const int var = b.model.add_var(VarKind::Binary, 0, 1, obj,
                                            "y" + arc_name(pa.from, pa.to) + "_" +
                                                std::to_string(k));
            VarMeta meta;
            meta.type = VarMeta::Type::PosChainArc;
            meta.u = pa.from;
            meta.v = pa.to;
            meta.k = k;
            b.var_meta.push_back(meta);
            if (pa.to != kTau) add_use_term(b, pa.to, var);
            if (inst.is_ndd(pa.from)) ndd_rows[pa.from].push_back({var, 1.0});
            // Positional balance at every pair: arrive at k, leave at k+1.
            if (pa.to != kTau && k <= flow_k_max) balance[{pa.to, k}].push_back({var, -1.0});
            if (inst.is_rdp(pa.from) && k >= 2 && k - 1 <= flow_k_max)
                balance[{pa.from, k - 1}].push_back({var, 1.0});
        }
    }
    for (auto& [n, terms] : ndd_rows)
        b.model.add_row(std::move(terms), Sense::Le, 1.0, "ndd_" + std::to_string(n));
    for (auto& [key, terms] : balance)
        b.model.add_row(std::move(terms), tau == TauMode::Explicit ? Sense::Eq : Sense::Le, 0.0,
                        "pflow_" + std::to_string(key.first) + "_" + std::to_string(key.second));
    finish(b);
    return b;
}

ModelBuild build_ef_hybrid(const Instance& inst, int K, int L, TauMode tau) {
    ModelBuild b;
    b.chain_kind = ChainModel::Hybrid;
    b.tau_mode = tau;
    b.K = K;
    b.L = L;
    if (tau == TauMode::Implicit) b.model.obj_constant = implicit_constant(inst);
    const ReducedGraph red = reduce_for_model(inst, ReductionFamily::EfHybrid, K, L);
    std::map<int, std::vector<std::pair<int, double>>> inflow, outflow, ndd_out;
    auto add_arc = [&](int u, int v, double obj) {
        const int var = b.model.add_var(VarKind::Binary, 0, 1, obj, "z" + arc_name(u, v));
        VarMeta meta;
        meta.type = VarMeta::Type::HybridArc;
        meta.u = u;
        meta.v = v;
        b.var_meta.push_back(meta);
        if (v != kTau) {
            add_use_term(b, v, var);
            inflow[v].push_back({var, 1.0});
        }
        if (inst.is_ndd(u))
            ndd_out[u].push_back({var, 1.0});
        else
            outflow[u].push_back({var, 1.0});
    };
    for (std::size_t i = 0; i < inst.arcs().size(); ++i) {
        if (!red.arc_kept[i]) continue;
        const Arc& a = inst.arcs()[i];
        // Arcs that only survive for the cycle side must not carry chain
        // credits; the per-arc implicit adjustment still telescopes on cycles.
        add_arc(a.from, a.to, arc_obj(inst, a.from, a.to, tau));
    }
    if (tau == TauMode::Explicit)
        for (int v = 1; v <= inst.vertex_count(); ++v)
            if (red.tau_arc_kept[v - 1] || (inst.is_rdp(v) && red.vertex_kept[v - 1]))
                add_arc(v, kTau, inst.tau_weight(v).to_double());
    for (auto& [n, terms] : ndd_out)
        b.model.add_row(terms, Sense::Le, 1.0, "ndd_" + std::to_string(n));
    for (int v = 1; v <= inst.rdp_count(); ++v) {
        auto fin = inflow.find(v);
        auto fout = outflow.find(v);
        if (fin == inflow.end() && fout == outflow.end()) continue;
        std::vector<std::pair<int, double>> terms;
        if (fin != inflow.end()) terms.insert(terms.end(), fin->second.begin(), fin->second.end());
        if (fout != outflow.end())
            for (auto [var, c] : fout->second) terms.push_back({var, -c});
        b.model.add_row(std::move(terms), tau == TauMode::Explicit ? Sense::Eq : Sense::Ge, 0.0,
                        "flow_" + std::to_string(v));
    }
    b.stats.pre_reduction_vars = static_cast<int>(inst.arcs().size()) +
                                 (tau == TauMode::Explicit ? inst.vertex_count() : 0);
    // The minimal violating cycles (length exactly K+1) are the cuts the lazy
    // loop would otherwise discover one incumbent at a time; when they are few
    // they are added statically, which tightens the relaxation substantially
    // on dense graphs with small K. Longer cycles stay with the separator.
    if (K < inst.rdp_count() && K <= 3) {
        std::map<std::pair<int, int>, int> arc_var;
        for (std::size_t j = 0; j < b.var_meta.size(); ++j)
            if (b.var_meta[j].v != kTau && inst.is_rdp(b.var_meta[j].u))
                arc_var[{b.var_meta[j].u, b.var_meta[j].v}] = static_cast<int>(j);
        constexpr std::size_t kMaxStaticCuts = 20000;
        std::size_t added = 0;
        if (K == 2) {
            // With only two-cycles allowed, any three pairs can carry at most
            // two arcs among themselves: a three-cycle is forbidden, a
            // two-cycle saturates both of its endpoints, and a path has two
            // arcs. One row per triple dominates every three-cycle cut.
            for (int u = 1; u <= inst.rdp_count() && added <= kMaxStaticCuts; ++u)
                for (int v = u + 1; v <= inst.rdp_count() && added <= kMaxStaticCuts; ++v)
                    for (int w = v + 1; w <= inst.rdp_count(); ++w) {
                        std::vector<std::pair<int, double>> terms;
                        for (auto [x, y] : {std::pair{u, v}, {v, u}, {u, w}, {w, u}, {v, w},
                                            {w, v}}) {
                            const auto it = arc_var.find({x, y});
                            if (it != arc_var.end()) terms.push_back({it->second, 1.0});
                        }
                        if (terms.size() < 3) continue;  // redundant below three arcs
                        if (++added > kMaxStaticCuts) break;
                        b.model.add_row(std::move(terms), Sense::Le, 2.0,
                                        "triple_cap_" + std::to_string(added));
                    }
        } else {
            // The minimal violating cycles (length exactly K+1) are the cuts
            // the lazy loop would otherwise discover one incumbent at a time.
            for (const Cycle& c : enumerate_cycles(inst, K + 1)) {
                if (static_cast<int>(c.vertices.size()) != K + 1) continue;
                if (++added > kMaxStaticCuts) break;
                std::vector<std::pair<int, double>> terms;
                bool complete = true;
                for (std::size_t p = 0; p < c.vertices.size() && complete; ++p) {
                    const int u = c.vertices[p];
                    const int v = c.vertices[(p + 1) % c.vertices.size()];
                    const auto it = arc_var.find({u, v});
                    if (it == arc_var.end())
                        complete = false;  // a pruned arc already forbids the cycle
                    else
                        terms.push_back({it->second, 1.0});
                }
                if (complete)
                    b.model.add_row(std::move(terms), Sense::Le, static_cast<double>(K),
                                    "short_cycle_cap_" + std::to_string(added));
            }
        }
    }
    if (K < inst.rdp_count()) {
        SeparatorSpec sep;
        sep.family = SeparatorSpec::Family::HybridLongCycle;
        sep.bound = K;
        b.separators.push_back(sep);
    }
    if (L <= inst.rdp_count()) {
        SeparatorSpec sep;
        sep.family = SeparatorSpec::Family::HybridLongChain;
        sep.bound = L;
        b.separators.push_back(sep);
    }
    finish(b);
    return b;
}

}  // namespace kex
