#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kex {

enum class VarKind { Binary, Continuous };
enum class Sense { Le, Eq, Ge };

struct Variable {
    int id = 0;
    VarKind kind = VarKind::Binary;
    double lb = 0.0;
    double ub = 1.0;
    double obj = 0.0;
    std::string label;
};

struct ConstraintRow {
    int id = 0;
    std::vector<std::pair<int, double>> terms;  // (variable id, coefficient)
    Sense sense = Sense::Le;
    double rhs = 0.0;
    std::string label;
    std::string lazy_class;  // empty for ordinary rows
};

// A maximization ILP. Variable ids are dense 0..n-1.
struct IlpModel {
    std::vector<Variable> vars;
    std::vector<ConstraintRow> rows;
    double obj_constant = 0.0;

    int add_var(VarKind kind, double lb, double ub, double obj, std::string label);
    int add_row(std::vector<std::pair<int, double>> terms, Sense sense, double rhs,
                std::string label, std::string lazy_class = "");
    void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;  // includes obj_constant
    std::vector<double> x;
    std::vector<double> reduced_cost;
    std::vector<double> dual;
    int iterations = 0;
};

enum class IpStatus { Optimal, Feasible, Infeasible, TimeLimit, MemoryLimit };

// Callback returning violated rows for an integral candidate solution.
using LazySeparator = std::function<std::vector<ConstraintRow>(const std::vector<double>&)>;

// Callback mapping a (fractional) relaxation point to a feasible integral
// assignment and its objective value; an empty vector means nothing found.
using PrimalHeuristic =
    std::function<std::pair<double, std::vector<double>>(const std::vector<double>&)>;

struct IpConfig {
    double time_limit_s = 3600.0;
    std::optional<double> target_bound;  // prove/refute existence of value >= target
    LazySeparator lazy_separator;
    // Optional separator consulted at fractional node relaxations. Returned
    // rows must hold for every integral solution: they tighten the relaxation
    // (and so the node bounds) but never exclude a feasible point.
    LazySeparator fractional_separator;
    // Optional rounding heuristic consulted once per node: lets searches whose
    // integral leaves are routinely rejected by lazy cuts still obtain
    // incumbents (and so pruning) early.
    PrimalHeuristic primal_heuristic;
    long long node_limit = -1;
    // Smallest possible positive gap between distinct objective values
    // (1 for integer weights); 0 disables integral bound rounding.
    double granularity = 0.0;
    // Search knobs (kept deterministic): best-bound vs depth-first node order,
    // and fractional-variable tie direction.
    bool depth_first = false;
    bool branch_high_id = false;
};

struct IpResult {
    IpStatus status = IpStatus::Infeasible;
    std::vector<double> x;
    double objective = 0.0;
    double best_bound = 0.0;
    long long nodes = 0;
    double wall_time_s = 0.0;
    int lazy_added = 0;
    bool target_refuted = false;  // no solution >= target_bound exists
    std::vector<ConstraintRow> added_cuts;
};

inline constexpr double kEpsFeas = 1e-6;
inline constexpr double kEpsInt = 1e-6;

LpResult solve_lp(const IlpModel& model);
IpResult solve_ip(const IlpModel& model, const IpConfig& config = {});

std::string export_lp_format(const IlpModel& model);

// Backend contract: adapters must provide LP solves with reduced costs and IP
// solves honoring the lazy-separator protocol.
struct BackendCapabilities {
    bool lazy_constraints = false;
    bool reduced_costs = false;
};

class SolverBackend {
public:
    virtual ~SolverBackend() = default;
    virtual std::string name() const = 0;
    virtual BackendCapabilities capabilities() const = 0;
    virtual LpResult solve_lp(const IlpModel& model) = 0;
    virtual IpResult solve_ip(const IlpModel& model, const IpConfig& config) = 0;
};

class BackendError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Registers an adapter; rejects adapters that cannot report reduced costs or
// handle lazy constraints (both are required by the solve pipeline).
void register_backend(std::shared_ptr<SolverBackend> backend);
std::shared_ptr<SolverBackend> get_backend(const std::string& name);
std::vector<std::string> backend_names();

}  // namespace kex
