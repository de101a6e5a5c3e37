#include "kex/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "kex/models.hpp"

namespace kex {

namespace {

double unit_uniform(std::mt19937_64& rng) {
    // 53 uniform bits; identical across platforms, unlike the distribution
    // adapters in <random>.
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit) return x % bound;
    }
}

int weight_draw(std::mt19937_64& rng) {
    return 1 + static_cast<int>(uniform_below(rng, 91));
}

}  // namespace

Instance generate_instance(const GenConfig& cfg) {
    if (cfg.rdp_count < 0 || cfg.density < 0.0 || cfg.density > 1.0 || cfg.ndd_fraction < 0.0)
        throw std::invalid_argument("invalid generator configuration");
    std::mt19937_64 rng(cfg.seed);
    const int r = cfg.rdp_count;
    const int nd = static_cast<int>(std::llround(cfg.ndd_fraction * r));
    // Sensitization level per recipient: highly sensitized recipients are
    // compatible with fewer donors.
    std::vector<double> accept(r + 1, 1.0);
    if (cfg.use_bands) {
        for (int v = 1; v <= r; ++v) {
            const double u = unit_uniform(rng);
            const double pra = u < 0.70 ? 0.05 : (u < 0.90 ? 0.45 : 0.90);
            accept[v] = 1.0 - pra;
        }
    }
    std::vector<Arc> arcs;
    for (int u = 1; u <= r; ++u)
        for (int v = 1; v <= r; ++v) {
            if (u == v) continue;
            if (unit_uniform(rng) < cfg.density * accept[v]) arcs.push_back({u, v});
        }
    for (int n = r + 1; n <= r + nd; ++n)
        for (int v = 1; v <= r; ++v)
            if (unit_uniform(rng) < cfg.density * accept[v]) arcs.push_back({n, v});
    std::vector<Rational> weights;
    weights.reserve(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i)
        weights.push_back(cfg.weighted ? Rational(weight_draw(rng)) : Rational(1));
    std::vector<Rational> tau(r + nd, Rational(0));
    return Instance(r, nd, std::move(arcs), std::move(weights), std::move(tau));
}

std::string csv_header() {
    return "schema,instance,cycle,chain,mode,tau,ps,status,objective,best_bound,lp_value,"
           "time_s,vars,constraints,lazy_cuts,flags";
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

std::string to_csv_row(const BenchRecord& r) {
    std::ostringstream os;
    os << kCsvSchemaVersion << ',' << r.instance_id << ',' << to_string(r.cycle) << ','
       << to_string(r.chain) << ',' << (r.rcvf ? "rcvf" : "plain") << ','
       << (r.tau == TauMode::Implicit ? "implicit" : "explicit") << ','
       << (r.ps == PositionMethod::Bfs ? "bfs" : "sp") << ',' << r.status << ','
       << fmt(r.objective) << ',' << fmt(r.best_bound) << ',' << fmt(r.lp_value) << ','
       << fmt(r.time_s) << ',' << r.vars << ',' << r.constraints << ',' << r.lazy_cuts << ','
       << r.flags;
    return os.str();
}

namespace {

using nlohmann::json;

struct Job {
    CycleModel cycle = CycleModel::None;
    ChainModel chain = ChainModel::None;
    SolveConfig cfg;
};

std::string status_name(IpStatus s) {
    switch (s) {
        case IpStatus::Optimal: return "OPTIMAL";
        case IpStatus::Feasible: return "FEASIBLE";
        case IpStatus::Infeasible: return "INFEASIBLE";
        case IpStatus::TimeLimit: return "TIME_LIMIT";
        case IpStatus::MemoryLimit: return "MEMORY_LIMIT";
    }
    return "ERROR";
}

}  // namespace

std::string run_benchmark(const std::string& manifest_json) {
    const json manifest = json::parse(manifest_json);
    const int K = manifest.value("K", 3);
    const int L = manifest.value("L", 3);
    const double time_limit = manifest.value("time_limit_s", 3600.0);

    std::vector<std::pair<std::string, Instance>> instances;
    for (const json& e : manifest.at("instances")) {
        if (e.is_string()) {
            std::ifstream in(e.get<std::string>());
            if (!in) throw std::runtime_error("cannot open instance " + e.get<std::string>());
            std::stringstream ss;
            ss << in.rdbuf();
            instances.emplace_back(e.get<std::string>(), parse_instance(ss.str()));
        } else {
            instances.emplace_back(e.at("id").get<std::string>(),
                                   parse_instance(e.at("data").dump()));
        }
    }
    std::vector<Job> jobs;
    for (const json& m : manifest.at("methods")) {
        Job j;
        j.cycle = cycle_model_from_string(m.value("cycle", "none"));
        j.chain = chain_model_from_string(m.value("chain", "none"));
        j.cfg.K = m.value("K", K);
        j.cfg.L = m.value("L", L);
        j.cfg.rcvf = m.value("rcvf", false);
        j.cfg.tau = m.value("tau", "implicit") == "explicit" ? TauMode::Explicit
                                                             : TauMode::Implicit;
        j.cfg.ps = m.value("ps", "bfs") == "sp" ? PositionMethod::ShortestPath
                                                : PositionMethod::Bfs;
        j.cfg.time_limit_s = m.value("time_limit_s", time_limit);
        jobs.push_back(j);
    }

    std::ostringstream csv;
    csv << csv_header() << '\n';
    for (const auto& [id, inst] : instances) {
        std::vector<BenchRecord> recs;
        for (const Job& j : jobs) {
            BenchRecord rec;
            rec.instance_id = id;
            rec.cycle = j.cycle;
            rec.chain = j.chain;
            rec.rcvf = j.cfg.rcvf;
            rec.tau = j.cfg.tau;
            rec.ps = j.cfg.ps;
            try {
                const SolveOutcome out = solve_method(inst, j.cycle, j.chain, j.cfg);
                rec.status = status_name(out.status);
                rec.objective = out.solution.objective.to_double();
                rec.best_bound = out.best_bound;
                rec.lp_value = out.lp_objective;
                // By convention a limit-hit run is charged the full limit.
                rec.time_s = out.status == IpStatus::TimeLimit ? j.cfg.time_limit_s
                                                               : out.wall_time_s;
                rec.vars = out.stats.vars;
                rec.constraints = out.stats.constraints + out.lazy_added;
                rec.lazy_cuts = out.lazy_added;
                const ValidationReport vr =
                    validate_solution(inst, out.solution, j.cfg.K,
                                      j.cfg.L == kUnboundedL ? inst.rdp_count() + 1 : j.cfg.L);
                if (!vr.valid) rec.flags = "invalid_solution";
            } catch (const std::exception& e) {
                rec.status = "ERROR";
                rec.flags = "exception";
                (void)e;
            }
            recs.push_back(std::move(rec));
        }
        // Cross-method audit: every objective must respect every proven bound.
        double lb_best = -std::numeric_limits<double>::infinity();
        double ub_best = std::numeric_limits<double>::infinity();
        for (const BenchRecord& r : recs) {
            if (r.status == "OPTIMAL") lb_best = std::max(lb_best, r.objective);
            if (r.status != "ERROR" && r.status != "INFEASIBLE")
                ub_best = std::min(ub_best, r.best_bound);
        }
        for (BenchRecord& r : recs) {
            if (r.status == "ERROR") { csv << to_csv_row(r) << '\n'; continue; }
            std::string flags = r.flags;
            auto add = [&](const char* f) {
                if (!flags.empty()) flags += ';';
                flags += f;
            };
            if (r.objective > ub_best + 1e-6) add("obj>UB_best");
            if (r.status == "OPTIMAL" && r.objective < lb_best - 1e-6) add("obj<LB_best");
            r.flags = flags;
            csv << to_csv_row(r) << '\n';
        }
    }
    return csv.str();
}

std::string emit_heatmap(const std::string& csv_text) {
    const std::vector<std::string> row_names = {"cf", "hcf", "ef", "eef", "pief"};
    const std::vector<std::string> col_names = {"cf",      "hcf",     "ef-exp", "ef-mtz",
                                                "eef-exp", "eef-mtz", "pief"};
    struct Cell {
        int n = 0, n_opt = 0, n_gap = 0;
        double time = 0, vars = 0, cons = 0, gap = 0;
    };
    std::map<std::pair<int, int>, Cell> cells;

    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("schema,", 0) != 0)
        throw std::runtime_error("malformed benchmark csv header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, ',')) f.push_back(tok);
        if (f.size() < 15) throw std::runtime_error("malformed benchmark csv row");
        const auto ri = std::find(row_names.begin(), row_names.end(), f[2]);
        const auto ci = std::find(col_names.begin(), col_names.end(), f[3]);
        if (ri == row_names.end() || ci == col_names.end()) continue;
        Cell& c = cells[{static_cast<int>(ri - row_names.begin()),
                         static_cast<int>(ci - col_names.begin())}];
        ++c.n;
        c.time += std::stod(f[11]);
        c.vars += std::stod(f[12]);
        c.cons += std::stod(f[13]);
        if (f[7] == "OPTIMAL") {
            ++c.n_opt;
            ++c.n_gap;
            c.gap += std::stod(f[10]) - std::stod(f[8]);
        }
    }

    using nlohmann::ordered_json;
    ordered_json out;
    out["rows"] = row_names;
    out["cols"] = col_names;
    ordered_json flagged = ordered_json::array();
    auto matrix = [&](auto value) {
        ordered_json m;
        ordered_json grid = ordered_json::array();
        std::vector<double> row_sum(row_names.size(), 0), col_sum(col_names.size(), 0);
        std::vector<int> row_n(row_names.size(), 0), col_n(col_names.size(), 0);
        double total = 0;
        int total_n = 0;
        for (std::size_t i = 0; i < row_names.size(); ++i) {
            ordered_json row = ordered_json::array();
            for (std::size_t j = 0; j < col_names.size(); ++j) {
                const auto it = cells.find({static_cast<int>(i), static_cast<int>(j)});
                if (it == cells.end() || it->second.n == 0) {
                    row.push_back(nullptr);
                    continue;
                }
                const double v = value(it->second);
                if (std::isnan(v)) { row.push_back(nullptr); continue; }
                row.push_back(v);
                row_sum[i] += v;
                col_sum[j] += v;
                ++row_n[i];
                ++col_n[j];
                total += v;
                ++total_n;
            }
            grid.push_back(row);
        }
        m["cells"] = grid;
        ordered_json ravg = ordered_json::array(), cavg = ordered_json::array();
        for (std::size_t i = 0; i < row_names.size(); ++i)
            ravg.push_back(row_n[i] ? ordered_json(row_sum[i] / row_n[i]) : ordered_json(nullptr));
        for (std::size_t j = 0; j < col_names.size(); ++j)
            cavg.push_back(col_n[j] ? ordered_json(col_sum[j] / col_n[j]) : ordered_json(nullptr));
        m["row_avg"] = ravg;
        m["col_avg"] = cavg;
        m["avg"] = total_n ? ordered_json(total / total_n) : ordered_json(nullptr);
        return m;
    };
    out["metrics"]["n_opt"] = matrix([](const Cell& c) { return double(c.n_opt); });
    out["metrics"]["mean_time"] = matrix([](const Cell& c) { return c.time / c.n; });
    out["metrics"]["mean_vars"] = matrix([](const Cell& c) { return c.vars / c.n; });
    out["metrics"]["mean_cons"] = matrix([](const Cell& c) { return c.cons / c.n; });
    out["metrics"]["mean_lp_gap"] = matrix([](const Cell& c) {
        return c.n_gap ? c.gap / c.n_gap : std::numeric_limits<double>::quiet_NaN();
    });
    for (std::size_t i = 0; i < row_names.size(); ++i)
        for (std::size_t j = 0; j < col_names.size(); ++j)
            if (!cells.count({static_cast<int>(i), static_cast<int>(j)}))
                flagged.push_back(row_names[i] + "+" + col_names[j]);
    out["missing_cells"] = flagged;
    return out.dump(2) + "\n";
}

}  // namespace kex
