#include "kex/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "kex/enumeration.hpp"
#include "kex/models.hpp"

namespace kex {

namespace {

struct Candidate {
    bool is_cycle = false;
    int index = 0;  // into the cycles / chains list
    std::uint64_t mask = 0;
    Rational weight;
    int min_vertex = 0;
};

struct CandidateSet {
    std::vector<Cycle> cycles;
    std::vector<Chain> chains;
    std::vector<Candidate> all;
};

CandidateSet collect_candidates(const Instance& inst, int K, int L) {
    if (inst.vertex_count() > 64)
        throw std::invalid_argument("reference solver limited to 64 vertices");
    const int eff_L = L == kUnboundedL ? inst.rdp_count() + 1 : L;
    CandidateSet cs;
    cs.cycles = enumerate_cycles(inst, K);
    cs.chains = enumerate_chains(inst, eff_L);
    for (std::size_t i = 0; i < cs.cycles.size(); ++i) {
        Candidate c;
        c.is_cycle = true;
        c.index = static_cast<int>(i);
        c.weight = cs.cycles[i].weight;
        c.min_vertex = cs.cycles[i].vertices.front();
        for (int v : cs.cycles[i].vertices) c.mask |= std::uint64_t{1} << (v - 1);
        cs.all.push_back(c);
    }
    for (std::size_t i = 0; i < cs.chains.size(); ++i) {
        Candidate c;
        c.index = static_cast<int>(i);
        c.weight = cs.chains[i].weight;
        c.min_vertex = cs.chains[i].ndd;
        for (int v : cs.chains[i].rdps) c.min_vertex = std::min(c.min_vertex, v);
        c.mask |= std::uint64_t{1} << (cs.chains[i].ndd - 1);
        for (int v : cs.chains[i].rdps) c.mask |= std::uint64_t{1} << (v - 1);
        cs.all.push_back(c);
    }
    std::stable_sort(cs.all.begin(), cs.all.end(),
                     [](const Candidate& a, const Candidate& b) {
                         return a.min_vertex < b.min_vertex;
                     });
    return cs;
}

}  // namespace

OracleResult brute_force_optimum(const Instance& inst, int K, int L, long long candidate_cap) {
    CandidateSet cs = collect_candidates(inst, K, L);
    if (static_cast<long long>(cs.all.size()) > candidate_cap)
        throw std::runtime_error("candidate cap exceeded: " + std::to_string(cs.all.size()));
    const int n = static_cast<int>(cs.all.size());
    // suffix[i]: total weight of candidates i.. — an upper bound for pruning.
    std::vector<Rational> suffix(n + 1);
    for (int i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + cs.all[i].weight;

    OracleResult res;
    std::vector<int> chosen, best_chosen;
    Rational best, current;
    std::uint64_t used = 0;
    auto dfs = [&](auto&& self, int i) -> void {
        ++res.explored;
        if (current > best) {
            best = current;
            best_chosen = chosen;
        }
        if (i == n) return;
        if (!(current + suffix[i] > best)) return;
        for (int j = i; j < n; ++j) {
            if (!(current + suffix[j] > best)) return;
            const Candidate& c = cs.all[j];
            if (used & c.mask) continue;
            used |= c.mask;
            current += c.weight;
            chosen.push_back(j);
            self(self, j + 1);
            chosen.pop_back();
            current -= c.weight;
            used &= ~c.mask;
        }
    };
    dfs(dfs, 0);
    res.value = best;
    for (int j : best_chosen) {
        const Candidate& c = cs.all[j];
        if (c.is_cycle)
            res.best.cycles.push_back(cs.cycles[c.index]);
        else
            res.best.chains.push_back(cs.chains[c.index]);
    }
    res.best.objective = best;
    return res;
}

Rational subset_enumeration_optimum(const Instance& inst, int K, int L) {
    CandidateSet cs = collect_candidates(inst, K, L);
    const int n = static_cast<int>(cs.all.size());
    if (n > 25) throw std::invalid_argument("subset enumeration limited to 25 candidates");
    Rational best;
    for (std::uint32_t sub = 0; sub < (std::uint32_t{1} << n); ++sub) {
        std::uint64_t used = 0;
        Rational w;
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            if (!(sub >> j & 1)) continue;
            if (used & cs.all[j].mask) { ok = false; break; }
            used |= cs.all[j].mask;
            w += cs.all[j].weight;
        }
        if (ok && w > best) best = w;
    }
    return best;
}

}  // namespace kex
