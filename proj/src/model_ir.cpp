#include "kex/model.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <set>
#include <sstream>

#include "kex/simplex.hpp"

namespace kex {

int IlpModel::add_var(VarKind kind, double lb, double ub, double obj, std::string label) {
    Variable v;
    v.id = static_cast<int>(vars.size());
    v.kind = kind;
    v.lb = lb;
    v.ub = ub;
    v.obj = obj;
    v.label = std::move(label);
    vars.push_back(std::move(v));
    return vars.back().id;
}

int IlpModel::add_row(std::vector<std::pair<int, double>> terms, Sense sense, double rhs,
                      std::string label, std::string lazy_class) {
    ConstraintRow r;
    r.id = static_cast<int>(rows.size());
    r.terms = std::move(terms);
    r.sense = sense;
    r.rhs = rhs;
    r.label = std::move(label);
    r.lazy_class = std::move(lazy_class);
    rows.push_back(std::move(r));
    return rows.back().id;
}

void IlpModel::validate() const {
    std::set<std::string> labels;
    for (const Variable& v : vars) {
        if (!std::isfinite(v.obj)) throw BackendError("variable " + v.label + ": bad objective");
        if (!v.label.empty() && !labels.insert(v.label).second)
            throw BackendError("duplicate variable label " + v.label);
    }
    std::set<std::string> rlabels;
    for (const ConstraintRow& r : rows) {
        for (auto [v, c] : r.terms) {
            if (v < 0 || v >= static_cast<int>(vars.size()))
                throw BackendError("row " + r.label + ": unknown variable id");
            if (!std::isfinite(c)) throw BackendError("row " + r.label + ": bad coefficient");
        }
        if (!std::isfinite(r.rhs)) throw BackendError("row " + r.label + ": bad rhs");
        if (!r.label.empty() && !rlabels.insert(r.label).second)
            throw BackendError("duplicate row label " + r.label);
    }
}

namespace {

struct Node {
    long long id = 0;
    double bound = 0.0;
    std::vector<double> lb, ub;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound < b.bound;  // max-heap on bound
        return a.id > b.id;
    }
};

double rounded_bound(double v, double granularity) {
    if (granularity <= 0) return v;
    return std::floor(v / granularity + 1e-6) * granularity;
}

std::string cut_fingerprint(const ConstraintRow& r) {
    std::ostringstream os;
    auto terms = r.terms;
    std::sort(terms.begin(), terms.end());
    for (auto [v, c] : terms) os << v << ":" << c << ";";
    os << static_cast<int>(r.sense) << "|" << r.rhs;
    return os.str();
}

}  // namespace

IpResult solve_ip(const IlpModel& original, const IpConfig& config) {
    original.validate();
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    IlpModel model = original;  // lazy cuts are appended to this working copy
    const int n = static_cast<int>(model.vars.size());
    IpResult res;
    res.best_bound = std::numeric_limits<double>::infinity();

    std::vector<double> lb0(n), ub0(n);
    for (int j = 0; j < n; ++j) {
        lb0[j] = model.vars[j].lb;
        ub0[j] = model.vars[j].ub;
    }

    std::priority_queue<Node, std::vector<Node>, NodeOrder> heap;
    std::vector<Node> stack;
    long long next_id = 0;
    auto push = [&](Node nd) {
        if (config.depth_first)
            stack.push_back(std::move(nd));
        else
            heap.push(std::move(nd));
    };
    auto empty = [&] { return config.depth_first ? stack.empty() : heap.empty(); };
    auto pop = [&] {
        if (config.depth_first) {
            Node nd = std::move(stack.back());
            stack.pop_back();
            return nd;
        }
        Node nd = heap.top();
        heap.pop();
        return nd;
    };
    auto open_bound = [&]() -> double {
        if (config.depth_first) {
            double b = -std::numeric_limits<double>::infinity();
            for (const Node& nd : stack) b = std::max(b, nd.bound);
            return b;
        }
        return heap.empty() ? -std::numeric_limits<double>::infinity() : heap.top().bound;
    };

    bool has_incumbent = false;
    double incumbent_val = -std::numeric_limits<double>::infinity();

    // Generated cuts live in a pool and only the ones the search currently
    // needs sit in the LP: relaxations with hundreds of stale cut rows are
    // dramatically slower to solve, and a deactivated cut is re-activated the
    // moment some relaxation point violates it, so dropping slack cuts never
    // loses correctness (integral candidates are re-checked by the separator
    // regardless).
    struct PoolCut {
        ConstraintRow row;
        bool active = false;
    };
    std::vector<PoolCut> pool;
    std::map<std::string, int> pool_index;  // content fingerprint -> pool slot
    const std::size_t base_rows = model.rows.size();
    int active_cuts = 0;
    auto rebuild_rows = [&] {
        model.rows.resize(base_rows);
        for (const PoolCut& pc : pool) {
            if (!pc.active) continue;
            ConstraintRow r = pc.row;
            r.id = static_cast<int>(model.rows.size());
            model.rows.push_back(std::move(r));
        }
    };
    auto activate = [&](int idx) {
        PoolCut& pc = pool[idx];
        if (pc.active) return;
        pc.active = true;
        ++active_cuts;
        ConstraintRow r = pc.row;
        r.id = static_cast<int>(model.rows.size());
        model.rows.push_back(std::move(r));
    };
    // Files the cut under its fingerprint (once globally) and returns its slot.
    auto pool_add = [&](ConstraintRow cut) -> int {
        const auto [it, fresh] = pool_index.emplace(cut_fingerprint(cut), static_cast<int>(pool.size()));
        if (!fresh) return it->second;
        res.added_cuts.push_back(cut);
        ++res.lazy_added;
        pool.push_back({std::move(cut), false});
        return static_cast<int>(pool.size()) - 1;
    };
    auto violation = [&](const ConstraintRow& r, const std::vector<double>& xv) {
        double lhs = 0.0;
        for (auto [j, c] : r.terms) lhs += c * xv[j];
        if (r.sense == Sense::Le) return lhs - r.rhs;
        if (r.sense == Sense::Ge) return r.rhs - lhs;
        return std::fabs(lhs - r.rhs);
    };
    constexpr int kActiveCutCap = 150;

    Node root;
    root.id = next_id++;
    root.bound = std::numeric_limits<double>::infinity();
    root.lb = lb0;
    root.ub = ub0;
    push(std::move(root));

    const double target_tol = 1e-7;
    auto prune_value = [&](double bound) {
        const double b = rounded_bound(bound, config.granularity);
        if (config.target_bound && b < *config.target_bound - target_tol) return true;
        if (!has_incumbent) return false;
        return b <= incumbent_val + kEpsInt;
    };

    IpStatus limit_status = IpStatus::Optimal;
    while (!empty()) {
        if (elapsed() > config.time_limit_s) { limit_status = IpStatus::TimeLimit; break; }
        if (config.node_limit >= 0 && res.nodes >= config.node_limit) {
            limit_status = IpStatus::MemoryLimit;
            break;
        }
        Node nd = pop();
        if (prune_value(nd.bound)) continue;
        ++res.nodes;

        LpResult lp = solve_lp_bounded(model, nd.lb, nd.ub);
        bool pruned = false;
        // Rounds of fractional separation at this node; the root gets a long
        // leash (tightening the global bound there prunes the whole tree),
        // deeper nodes a short one to avoid tailing off.
        int frac_rounds = 0;
        const int frac_round_cap = nd.id == 0 ? 200 : 5;
        bool heur_done = false;
        while (true) {
            if (lp.status != LpStatus::Optimal) { pruned = true; break; }
            // Re-activate pooled cuts the current point violates (cheaper
            // than rediscovering them, and what makes purging safe).
            {
                bool reactivated = false;
                for (std::size_t p = 0; p < pool.size(); ++p)
                    if (!pool[p].active && violation(pool[p].row, lp.x) > 1e-7) {
                        activate(static_cast<int>(p));
                        reactivated = true;
                    }
                if (reactivated) {
                    lp = solve_lp_bounded(model, nd.lb, nd.ub);
                    continue;
                }
            }
            if (config.primal_heuristic && !heur_done) {
                heur_done = true;
                auto [hval, hx] = config.primal_heuristic(lp.x);
                if (!hx.empty() && (!has_incumbent || hval > incumbent_val + 1e-12)) {
                    has_incumbent = true;
                    incumbent_val = hval;
                    res.x = std::move(hx);
                }
            }
            if (prune_value(lp.objective)) { pruned = true; break; }
            // Integral on every binary?
            int frac_var = -1;
            double frac_score = -1.0;
            for (int j = 0; j < n; ++j) {
                if (model.vars[j].kind != VarKind::Binary) continue;
                const double f = lp.x[j] - std::floor(lp.x[j]);
                const double dist = std::min(f, 1.0 - f);
                if (dist <= kEpsInt) continue;
                const double score = 0.5 - std::fabs(f - 0.5);
                if (score > frac_score + 1e-12 ||
                    (std::fabs(score - frac_score) <= 1e-12 && frac_var >= 0 &&
                     config.branch_high_id)) {
                    frac_score = score;
                    frac_var = j;
                }
            }
            if (frac_var >= 0) {
                if (config.fractional_separator && frac_rounds < frac_round_cap &&
                    elapsed() <= config.time_limit_s) {
                    auto cuts = config.fractional_separator(lp.x);
                    bool added = false;
                    for (ConstraintRow& cut : cuts) {
                        const int idx = pool_add(std::move(cut));
                        if (pool[idx].active) continue;
                        activate(idx);
                        added = true;
                    }
                    if (added) {
                        ++frac_rounds;
                        lp = solve_lp_bounded(model, nd.lb, nd.ub);
                        continue;  // re-evaluate under the tightened relaxation
                    }
                }
                // Branch: child with the variable fixed to 0, and to 1.
                Node c0 = nd, c1 = nd;
                c0.id = next_id++;
                c1.id = next_id++;
                c0.bound = lp.objective;
                c1.bound = lp.objective;
                c0.ub[frac_var] = 0.0;
                c1.lb[frac_var] = 1.0;
                push(std::move(c0));
                push(std::move(c1));
                pruned = true;  // node replaced by children
                break;
            }
            // Candidate incumbent; ask the separator before accepting.
            if (config.lazy_separator) {
                std::vector<double> xr(lp.x);
                for (int j = 0; j < n; ++j)
                    if (model.vars[j].kind == VarKind::Binary) xr[j] = std::round(xr[j]);
                auto cuts = config.lazy_separator(xr);
                bool added = false;
                for (ConstraintRow& cut : cuts) {
                    const int idx = pool_add(std::move(cut));
                    if (pool[idx].active) continue;
                    activate(idx);
                    added = true;
                }
                if (added) {
                    lp = solve_lp_bounded(model, nd.lb, nd.ub);
                    continue;  // re-evaluate this node under the new rows
                }
            }
            if (!has_incumbent || lp.objective > incumbent_val + 1e-12) {
                has_incumbent = true;
                incumbent_val = lp.objective;
                res.x = lp.x;
                for (int j = 0; j < n; ++j)
                    if (model.vars[j].kind == VarKind::Binary) res.x[j] = std::round(res.x[j]);
            }
            pruned = true;
            break;
        }
        (void)pruned;
        // Purge: drop cuts the node's last point left slack once the LP has
        // grown enough to matter; the re-activation scan restores any of them
        // on demand.
        if (active_cuts > kActiveCutCap && lp.status == LpStatus::Optimal) {
            bool dropped = false;
            for (PoolCut& pc : pool)
                if (pc.active && violation(pc.row, lp.x) < -1e-7) {
                    pc.active = false;
                    --active_cuts;
                    dropped = true;
                }
            if (dropped) rebuild_rows();
        }
        if (config.target_bound && has_incumbent &&
            incumbent_val >= *config.target_bound - target_tol)
            break;  // destructive bound met: the target itself is optimal
    }

    res.wall_time_s = elapsed();
    const double open = open_bound();
    res.best_bound = std::max(has_incumbent ? incumbent_val : -std::numeric_limits<double>::infinity(),
                              open);
    if (has_incumbent) {
        res.objective = incumbent_val;
        if (limit_status != IpStatus::Optimal && !empty() &&
            rounded_bound(open, config.granularity) > incumbent_val + kEpsInt) {
            res.status = limit_status == IpStatus::TimeLimit ? IpStatus::TimeLimit
                                                             : IpStatus::MemoryLimit;
        } else {
            res.status = IpStatus::Optimal;
            res.best_bound = incumbent_val;
            // Exhausted search with a best solution below the target: the
            // target value itself is refuted.
            if (config.target_bound && incumbent_val < *config.target_bound - target_tol)
                res.target_refuted = true;
        }
    } else {
        if (limit_status != IpStatus::Optimal && !empty())
            res.status = limit_status;
        else {
            res.status = IpStatus::Infeasible;
            if (config.target_bound) res.target_refuted = true;
        }
    }
    return res;
}

std::string export_lp_format(const IlpModel& model) {
    std::ostringstream os;
    os << "\\ exported model\nMaximize\n obj:";
    bool first = true;
    for (const Variable& v : model.vars) {
        if (v.obj == 0.0) continue;
        os << (v.obj >= 0 ? (first ? " " : " + ") : " - ") << std::fabs(v.obj) << " "
           << (v.label.empty() ? "x" + std::to_string(v.id) : v.label);
        first = false;
    }
    if (first) os << " 0";
    os << "\nSubject To\n";
    for (const ConstraintRow& r : model.rows) {
        os << " " << (r.label.empty() ? "c" + std::to_string(r.id) : r.label) << ":";
        bool f2 = true;
        for (auto [v, c] : r.terms) {
            const std::string name =
                model.vars[v].label.empty() ? "x" + std::to_string(v) : model.vars[v].label;
            os << (c >= 0 ? (f2 ? " " : " + ") : " - ") << std::fabs(c) << " " << name;
            f2 = false;
        }
        if (f2) os << " 0";
        os << (r.sense == Sense::Le ? " <= " : r.sense == Sense::Eq ? " = " : " >= ") << r.rhs
           << "\n";
    }
    os << "Bounds\n";
    for (const Variable& v : model.vars) {
        const std::string name = v.label.empty() ? "x" + std::to_string(v.id) : v.label;
        os << " " << v.lb << " <= " << name << " <= " << v.ub << "\n";
    }
    os << "Binaries\n";
    for (const Variable& v : model.vars)
        if (v.kind == VarKind::Binary)
            os << " " << (v.label.empty() ? "x" + std::to_string(v.id) : v.label);
    os << "\nEnd\n";
    return os.str();
}

namespace {

class BuiltinBackend : public SolverBackend {
public:
    explicit BuiltinBackend(std::string name, bool depth_first, bool branch_high)
        : name_(std::move(name)), depth_first_(depth_first), branch_high_(branch_high) {}
    std::string name() const override { return name_; }
    BackendCapabilities capabilities() const override { return {true, true}; }
    LpResult solve_lp(const IlpModel& model) override { return kex::solve_lp(model); }
    IpResult solve_ip(const IlpModel& model, const IpConfig& config) override {
        IpConfig c = config;
        c.depth_first = depth_first_ || config.depth_first;
        c.branch_high_id = branch_high_ || config.branch_high_id;
        return kex::solve_ip(model, c);
    }

private:
    std::string name_;
    bool depth_first_;
    bool branch_high_;
};

std::map<std::string, std::shared_ptr<SolverBackend>>& registry() {
    static std::map<std::string, std::shared_ptr<SolverBackend>> r = {
        {"builtin", std::make_shared<BuiltinBackend>("builtin", false, false)},
        // Same LP core, different tree traversal: useful as an independent
        // cross-check that results do not depend on the search path.
        {"builtin-dfs", std::make_shared<BuiltinBackend>("builtin-dfs", true, true)},
    };
    return r;
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

void register_backend(std::shared_ptr<SolverBackend> backend) {
    if (!backend) throw BackendError("null backend");
    const auto caps = backend->capabilities();
    if (!caps.reduced_costs)
        throw BackendError("backend " + backend->name() +
                           ": reduced costs are required (variable fixing depends on them)");
    if (!caps.lazy_constraints)
        throw BackendError("backend " + backend->name() +
                           ": lazy-constraint support is required (constraint generation)");
    std::lock_guard<std::mutex> lock(registry_mutex());
    registry()[backend->name()] = std::move(backend);
}

std::shared_ptr<SolverBackend> get_backend(const std::string& name) {
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry().find(name);
    if (it == registry().end()) throw BackendError("unknown backend " + name);
    return it->second;
}

std::vector<std::string> backend_names() {
    std::lock_guard<std::mutex> lock(registry_mutex());
    std::vector<std::string> names;
    for (const auto& [k, v] : registry()) names.push_back(k);
    return names;
}

}  // namespace kex
