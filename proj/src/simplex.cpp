#include "kex/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kOptTol = 1e-9;
constexpr double kFeasTol = 1e-8;

enum class ColStatus { Basic, AtLower, AtUpper, Free };

// Bounded-variable primal simplex with an explicit dense basis inverse.
// Columns 0..n-1 are structural, n..n+m-1 are row slacks, and artificial
// columns are appended as needed for phase one.
class Simplex {
public:
    Simplex(const IlpModel& model, const std::vector<double>& lb,
            const std::vector<double>& ub)
        : model_(model), m_(static_cast<int>(model.rows.size())),
          n_(static_cast<int>(model.vars.size())) {
        cols_.resize(n_ + m_);
        lo_.assign(n_ + m_, 0.0);
        hi_.assign(n_ + m_, 0.0);
        cost_.assign(n_ + m_, 0.0);
        for (int j = 0; j < n_; ++j) {
            lo_[j] = lb[j];
            hi_[j] = ub[j];
            cost_[j] = model.vars[j].obj;
        }
        b_.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            const ConstraintRow& row = model.rows[i];
            b_[i] = row.rhs;
            for (auto [v, c] : row.terms) cols_[v].push_back({i, c});
            const int sj = n_ + i;
            cols_[sj].push_back({i, 1.0});
            switch (row.sense) {
                case Sense::Le: lo_[sj] = 0.0; hi_[sj] = kInf; break;
                case Sense::Eq: lo_[sj] = 0.0; hi_[sj] = 0.0; break;
                case Sense::Ge: lo_[sj] = -kInf; hi_[sj] = 0.0; break;
            }
        }
    }

    LpResult run() {
        LpResult res;
        if (m_ == 0) return solve_unconstrained();
        init_basis();
        if (needs_phase1_) {
            phase_ = 1;
            if (!iterate()) return numerical_failure();
            double infeas = 0.0;
            for (int j : artificials_) infeas += value(j);
            if (infeas > 1e-6) {
                res.status = LpStatus::Infeasible;
                return res;
            }
            // Pin artificials to zero and continue with the true objective.
            for (int j : artificials_) { lo_[j] = 0.0; hi_[j] = 0.0; }
        }
        phase_ = 2;
        if (!iterate()) {
            if (unbounded_) {
                res.status = LpStatus::Unbounded;
                return res;
            }
            return numerical_failure();
        }
        res.status = LpStatus::Optimal;
        res.iterations = total_iters_;
        res.x.resize(n_);
        for (int j = 0; j < n_; ++j) res.x[j] = clamp_bound(j, value(j));
        res.objective = model_.obj_constant;
        for (int j = 0; j < n_; ++j) res.objective += model_.vars[j].obj * res.x[j];
        // Duals from the final basis, reduced costs for structural columns.
        std::vector<double> y = dual_values();
        res.dual = y;
        res.reduced_cost.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) {
            if (status_[j] == ColStatus::Basic) continue;
            double r = cost_[j];
            for (auto [i, c] : cols_[j]) r -= y[i] * c;
            res.reduced_cost[j] = r;
        }
        return res;
    }

private:
    LpResult solve_unconstrained() {
        LpResult res;
        res.x.assign(n_, 0.0);
        res.reduced_cost.assign(n_, 0.0);
        res.objective = model_.obj_constant;
        for (int j = 0; j < n_; ++j) {
            if (lo_[j] > hi_[j] + kFeasTol) { res.status = LpStatus::Infeasible; return res; }
            double v;
            if (cost_[j] > 0) {
                if (hi_[j] >= kInf) { res.status = LpStatus::Unbounded; return res; }
                v = hi_[j];
            } else if (cost_[j] < 0) {
                if (lo_[j] <= -kInf) { res.status = LpStatus::Unbounded; return res; }
                v = lo_[j];
            } else {
                v = lo_[j] > -kInf ? lo_[j] : (hi_[j] < kInf ? hi_[j] : 0.0);
            }
            res.x[j] = v;
            res.reduced_cost[j] = cost_[j];
            res.objective += cost_[j] * v;
        }
        res.status = LpStatus::Optimal;
        return res;
    }

    double clamp_bound(int j, double v) const {
        if (lo_[j] > -kInf) v = std::max(v, lo_[j]);
        if (hi_[j] < kInf) v = std::min(v, hi_[j]);
        return v;
    }

    LpResult numerical_failure() {
        LpResult res;
        res.status = LpStatus::Infeasible;  // conservative: never report a bogus optimum
        return res;
    }

    double value(int j) const {
        if (status_[j] == ColStatus::Basic) return xB_[row_of_[j]];
        if (status_[j] == ColStatus::AtLower) return lo_[j];
        if (status_[j] == ColStatus::AtUpper) return hi_[j];
        return 0.0;
    }

    void init_basis() {
        const int total = n_ + m_;
        status_.assign(total, ColStatus::AtLower);
        row_of_.assign(total, -1);
        is_art_.assign(total, 0);
        for (int j = 0; j < total; ++j) {
            if (lo_[j] > -kInf)
                status_[j] = ColStatus::AtLower;
            else if (hi_[j] < kInf)
                status_[j] = ColStatus::AtUpper;
            else
                status_[j] = ColStatus::Free;
        }
        // Start from the all-slack basis; rows whose slack value falls outside
        // its bounds get an artificial column carrying the violation.
        std::vector<double> act(m_, 0.0);
        for (int j = 0; j < n_; ++j) {
            const double v = value(j);
            if (v == 0.0) continue;
            for (auto [i, c] : cols_[j]) act[i] += c * v;
        }
        basis_.assign(m_, -1);
        xB_.assign(m_, 0.0);
        binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
        for (int i = 0; i < m_; ++i) binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;
        for (int i = 0; i < m_; ++i) {
            const int sj = n_ + i;
            double sval = b_[i] - act[i];
            if (sval >= lo_[sj] - kFeasTol && sval <= hi_[sj] + kFeasTol) {
                basis_[i] = sj;
                status_[sj] = ColStatus::Basic;
                row_of_[sj] = i;
                xB_[i] = sval;
            } else {
                // Clamp the slack to its nearest bound and cover the rest.
                double snb = sval < lo_[sj] ? lo_[sj] : hi_[sj];
                status_[sj] = snb == lo_[sj] ? ColStatus::AtLower : ColStatus::AtUpper;
                double resid = b_[i] - act[i] - snb;
                const int aj = static_cast<int>(cols_.size());
                cols_.push_back({{i, resid >= 0 ? 1.0 : -1.0}});
                lo_.push_back(0.0);
                hi_.push_back(kInf);
                cost_.push_back(0.0);
                is_art_.resize(cols_.size(), 0);
                is_art_[aj] = 1;
                status_.push_back(ColStatus::Basic);
                row_of_.push_back(i);
                basis_[i] = aj;
                xB_[i] = std::fabs(resid);
                // The basis column is -e_i when the artificial carries -1.
                if (resid < 0) binv_[static_cast<std::size_t>(i) * m_ + i] = -1.0;
                artificials_.push_back(aj);
                needs_phase1_ = true;
            }
        }
    }

    double phase_cost(int j) const {
        // Phase one maximizes minus the artificial mass.
        if (phase_ == 1) return is_art_[j] ? -1.0 : 0.0;
        return j < static_cast<int>(cost_.size()) ? cost_[j] : 0.0;
    }

    std::vector<double> dual_values() const {
        std::vector<double> y(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            const double cb = phase_cost(basis_[i]);
            if (cb == 0.0) continue;
            const double* brow = &binv_[static_cast<std::size_t>(i) * m_];
            for (int k = 0; k < m_; ++k) y[k] += cb * brow[k];
        }
        return y;
    }

    // Returns false on unbounded ray or iteration blow-up.
    bool iterate() {
        const int total = static_cast<int>(cols_.size());
        const long long bland_after = 50LL * (m_ + total) + 1000;
        const long long hard_cap = 400LL * (m_ + total) + 200000;
        long long iters = 0;
        while (true) {
            if (iters > hard_cap) return false;
            const bool bland = iters > bland_after;
            std::vector<double> y = dual_values();
            int enter = -1;
            double best = kOptTol;
            int dir = +1;
            for (int j = 0; j < total; ++j) {
                if (status_[j] == ColStatus::Basic) continue;
                if (hi_[j] - lo_[j] < kPivotTol && status_[j] != ColStatus::Free) continue;
                double r = phase_cost(j);
                for (auto [i, c] : cols_[j]) r -= y[i] * c;
                int d = 0;
                if (status_[j] == ColStatus::AtLower && r > kOptTol) d = +1;
                else if (status_[j] == ColStatus::AtUpper && r < -kOptTol) d = -1;
                else if (status_[j] == ColStatus::Free && std::fabs(r) > kOptTol)
                    d = r > 0 ? +1 : -1;
                if (d == 0) continue;
                if (bland) { enter = j; dir = d; break; }
                if (std::fabs(r) > best) { best = std::fabs(r); enter = j; dir = d; }
            }
            if (enter < 0) return true;  // optimal for this phase

            // d = Binv * a_enter
            std::vector<double> d(m_, 0.0);
            for (auto [i, c] : cols_[enter])
                for (int k = 0; k < m_; ++k)
                    d[k] += binv_[static_cast<std::size_t>(k) * m_ + i] * c;

            // Ratio test: entering moves by t >= 0 in direction `dir`.
            double tmax = kInf;
            int leave_row = -1;
            int leave_to = 0;  // -1 lower, +1 upper
            if (hi_[enter] < kInf && lo_[enter] > -kInf) tmax = hi_[enter] - lo_[enter];
            for (int i = 0; i < m_; ++i) {
                const double di = dir * d[i];
                if (std::fabs(di) < kPivotTol) continue;
                const int bj = basis_[i];
                double t;
                int to;
                if (di > 0) {  // basic decreases
                    if (lo_[bj] <= -kInf) continue;
                    t = (xB_[i] - lo_[bj]) / di;
                    to = -1;
                } else {  // basic increases
                    if (hi_[bj] >= kInf) continue;
                    t = (xB_[i] - hi_[bj]) / di;  // di < 0 -> t >= 0
                    to = +1;
                }
                if (t < -1e-12) t = 0.0;
                if (t < tmax - 1e-12 ||
                    (t < tmax + 1e-12 && leave_row >= 0 &&
                     (bland ? basis_[i] < basis_[leave_row]
                            : std::fabs(d[i]) > std::fabs(d[leave_row])))) {
                    tmax = t;
                    leave_row = i;
                    leave_to = to;
                }
            }
            if (tmax >= kInf) {
                if (phase_ == 1) return false;  // should not happen
                unbounded_ = true;
                return false;
            }
            // Apply the step.
            for (int i = 0; i < m_; ++i) xB_[i] -= dir * tmax * d[i];
            if (leave_row < 0) {
                // Bound flip: the entering variable crosses to its other bound.
                status_[enter] =
                    status_[enter] == ColStatus::AtLower ? ColStatus::AtUpper : ColStatus::AtLower;
            } else {
                const int out = basis_[leave_row];
                status_[out] = leave_to < 0 ? ColStatus::AtLower : ColStatus::AtUpper;
                row_of_[out] = -1;
                double enter_val;
                if (status_[enter] == ColStatus::AtLower) enter_val = lo_[enter] + dir * tmax;
                else if (status_[enter] == ColStatus::AtUpper) enter_val = hi_[enter] + dir * tmax;
                else enter_val = dir * tmax;
                basis_[leave_row] = enter;
                status_[enter] = ColStatus::Basic;
                row_of_[enter] = leave_row;
                xB_[leave_row] = enter_val;
                // Update the basis inverse by the pivot row.
                const double p = d[leave_row];
                double* prow = &binv_[static_cast<std::size_t>(leave_row) * m_];
                for (int k = 0; k < m_; ++k) prow[k] /= p;
                for (int i = 0; i < m_; ++i) {
                    if (i == leave_row || std::fabs(d[i]) < 1e-14) continue;
                    double* irow = &binv_[static_cast<std::size_t>(i) * m_];
                    const double f = d[i];
                    for (int k = 0; k < m_; ++k) irow[k] -= f * prow[k];
                }
            }
            ++iters;
            ++total_iters_;
        }
    }

    const IlpModel& model_;
    int m_ = 0, n_ = 0;
    std::vector<std::vector<std::pair<int, double>>> cols_;
    std::vector<double> lo_, hi_, cost_, b_;
    std::vector<ColStatus> status_;
    std::vector<int> row_of_;
    std::vector<int> basis_;
    std::vector<double> xB_;
    std::vector<double> binv_;
    std::vector<int> artificials_;
    std::vector<char> is_art_;
    bool needs_phase1_ = false;
    bool unbounded_ = false;
    int phase_ = 2;
    int total_iters_ = 0;
};

}  // namespace

LpResult solve_lp_bounded(const IlpModel& model, const std::vector<double>& lb,
                          const std::vector<double>& ub) {
    Simplex s(model, lb, ub);
    return s.run();
}

LpResult solve_lp(const IlpModel& model) {
    model.validate();
    std::vector<double> lb, ub;
    lb.reserve(model.vars.size());
    ub.reserve(model.vars.size());
    for (const Variable& v : model.vars) {
        lb.push_back(v.lb);
        ub.push_back(v.ub);
    }
    return solve_lp_bounded(model, lb, ub);
}

}  // namespace kex
