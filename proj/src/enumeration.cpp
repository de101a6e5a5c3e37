#include "kex/enumeration.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "kex/reduction.hpp"

namespace kex {

namespace {

Rational path_weight(const Instance& inst, const std::vector<int>& vs) {
    Rational w(0);
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) w += inst.arc_weight(vs[i], vs[i + 1]);
    return w;
}

}  // namespace

std::vector<Cycle> enumerate_cycles(const Instance& inst, int K) {
    std::vector<Cycle> out;
    if (K <= 0) return out;
    const int r = inst.rdp_count();
    if (inst.allow_self_loops()) {
        for (int v = 1; v <= r; ++v)
            if (inst.has_arc(v, v))
                out.push_back(Cycle{{v}, inst.arc_weight(v, v)});
    }
    // Canonical form: start at the lowest vertex, use only higher vertices.
    std::vector<int> path;
    std::vector<bool> used(static_cast<std::size_t>(r) + 1, false);
    auto dfs = [&](auto&& self, int start, int v) -> void {
        if (static_cast<int>(path.size()) >= 2 && inst.has_arc(v, start)) {
            Cycle c;
            c.vertices = path;
            c.weight = path_weight(inst, path) + inst.arc_weight(v, start);
            out.push_back(std::move(c));
        }
        if (static_cast<int>(path.size()) == K) return;
        for (int w : inst.successors(v)) {
            if (w <= start || used[w]) continue;
            used[w] = true;
            path.push_back(w);
            self(self, start, w);
            path.pop_back();
            used[w] = false;
        }
    };
    for (int start = 1; start <= r; ++start) {
        path = {start};
        used.assign(used.size(), false);
        used[start] = true;
        if (K >= 2) {
            for (int w : inst.successors(start)) {
                if (w <= start) continue;
                used[w] = true;
                path.push_back(w);
                dfs(dfs, start, w);
                path.pop_back();
                used[w] = false;
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Cycle& a, const Cycle& b) { return a.vertices < b.vertices; });
    return out;
}

std::vector<Chain> enumerate_chains(const Instance& inst, int L) {
    std::vector<Chain> out;
    if (L <= 0) return out;
    const int r = inst.rdp_count();
    std::vector<int> path;
    std::vector<bool> used(static_cast<std::size_t>(r) + 1, false);
    for (int n = r + 1; n <= inst.vertex_count(); ++n) {
        Chain base;
        base.ndd = n;
        base.weight = inst.tau_weight(n);
        out.push_back(base);  // length-1 donation straight to the terminal
        auto dfs = [&](auto&& self, int v, Rational acc) -> void {
            Chain c;
            c.ndd = n;
            c.rdps = path;
            c.weight = acc + inst.tau_weight(v);
            out.push_back(std::move(c));
            if (static_cast<int>(path.size()) + 1 >= L) return;
            for (int w : inst.successors(v)) {
                if (used[w] || w == v) continue;
                used[w] = true;
                path.push_back(w);
                self(self, w, acc + inst.arc_weight(v, w));
                path.pop_back();
                used[w] = false;
            }
        };
        if (L >= 2) {
            for (int w : inst.successors(n)) {
                used.assign(used.size(), false);
                used[w] = true;
                path = {w};
                dfs(dfs, w, inst.arc_weight(n, w));
                path.clear();
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Chain& a, const Chain& b) {
        if (a.ndd != b.ndd) return a.ndd < b.ndd;
        return a.rdps < b.rdps;
    });
    return out;
}

std::vector<HalfCycle> enumerate_half_cycles(const Instance& inst, int K) {
    std::vector<HalfCycle> out;
    if (K <= 0) return out;
    const int r = inst.rdp_count();
    const int half = (K + 1) / 2;

    std::vector<HalfCycle> candidates;
    if (inst.allow_self_loops() && K >= 1) {
        for (int v = 1; v <= r; ++v)
            if (inst.has_arc(v, v)) candidates.push_back(HalfCycle{{v}, inst.arc_weight(v, v)});
    }
    // Simple paths of up to ceil(K/2) arcs whose lowest vertex is an endpoint;
    // when K is odd, a maximal-length half must start at its lowest vertex.
    std::vector<int> path;
    std::vector<bool> used(static_cast<std::size_t>(r) + 1, false);
    auto emit = [&]() {
        const int lo = *std::min_element(path.begin(), path.end());
        const int k = static_cast<int>(path.size()) - 1;
        if (lo != path.front() && lo != path.back()) return;
        if (K % 2 == 1 && k == half && lo != path.front()) return;
        candidates.push_back(HalfCycle{path, path_weight(inst, path)});
    };
    auto dfs = [&](auto&& self, int v) -> void {
        if (path.size() >= 2) emit();
        if (static_cast<int>(path.size()) - 1 >= half) return;
        for (int w : inst.successors(v)) {
            if (used[w] || w == v) continue;
            used[w] = true;
            path.push_back(w);
            self(self, w);
            path.pop_back();
            used[w] = false;
        }
    };
    for (int v = 1; v <= r; ++v) {
        used.assign(used.size(), false);
        used[v] = true;
        path = {v};
        dfs(dfs, v);
    }

    // Partner-existence filter (endpoints and length only): a half from u to v
    // needs some candidate from v back to u whose length keeps the joint cycle
    // within K. The admissible partner lengths depend on which endpoint is the
    // lower-indexed one.
    std::set<std::tuple<int, int, int>> sig;  // (start, end, length)
    for (const auto& h : candidates)
        if (!h.is_loop()) sig.insert({h.start(), h.end(), h.length()});
    for (const auto& h : candidates) {
        if (h.is_loop()) {
            out.push_back(h);
            continue;
        }
        const int u = h.start(), v = h.end(), k = h.length();
        bool ok = false;
        if (u < v) {
            ok = sig.count({v, u, k}) || (k >= 1 && sig.count({v, u, k - 1}));
        } else {
            ok = sig.count({v, u, k}) || sig.count({v, u, k + 1});
        }
        if (ok) out.push_back(h);
    }
    std::sort(out.begin(), out.end(),
              [](const HalfCycle& a, const HalfCycle& b) { return a.vertices < b.vertices; });
    return out;
}

HalfChainSets enumerate_half_chains(const Instance& inst, int L) {
    HalfChainSets out;
    if (L < 1) return out;
    const int r = inst.rdp_count();
    for (int n = r + 1; n <= inst.vertex_count(); ++n)
        out.length_ones.push_back(
            HalfChain{HalfChain::Kind::LengthOne, n, {}, inst.tau_weight(n)});

    const int max_first = L / 2;
    const int max_second = (L + 1) / 2;

    std::vector<HalfChain> firsts, seconds;
    std::vector<int> path;
    std::vector<bool> used(static_cast<std::size_t>(r) + 1, false);
    // First halves: an NDD followed by 1..floor(L/2) distinct RDPs.
    for (int n = r + 1; n <= inst.vertex_count() && max_first >= 1; ++n) {
        auto dfs = [&](auto&& self, int v, Rational acc) -> void {
            firsts.push_back(HalfChain{HalfChain::Kind::First, n, path, acc});
            if (static_cast<int>(path.size()) >= max_first) return;
            for (int w : inst.successors(v)) {
                if (used[w] || w == v) continue;
                used[w] = true;
                path.push_back(w);
                self(self, w, acc + inst.arc_weight(v, w));
                path.pop_back();
                used[w] = false;
            }
        };
        for (int w : inst.successors(n)) {
            used.assign(used.size(), false);
            used[w] = true;
            path = {w};
            dfs(dfs, w, inst.arc_weight(n, w));
            path.clear();
        }
    }
    // Second halves: 1..ceil(L/2) distinct RDPs ending with the terminal
    // donation (whose weight is folded in).
    for (int v0 = 1; v0 <= r && max_second >= 1; ++v0) {
        auto dfs = [&](auto&& self, int v, Rational acc) -> void {
            seconds.push_back(
                HalfChain{HalfChain::Kind::Second, 0, path, acc + inst.tau_weight(v)});
            if (static_cast<int>(path.size()) >= max_second) return;
            for (int w : inst.successors(v)) {
                if (used[w] || w == v) continue;
                used[w] = true;
                path.push_back(w);
                self(self, w, acc + inst.arc_weight(v, w));
                path.pop_back();
                used[w] = false;
            }
        };
        used.assign(used.size(), false);
        used[v0] = true;
        path = {v0};
        dfs(dfs, v0, Rational(0));
        path.clear();
    }

    // Compatibility pruning: the two halves overlap on one pair, so a first of
    // length l pairs with a second of length l or l+1 starting at its end
    // vertex, and a second of length l with a first of length l or l-1.
    std::set<std::pair<int, int>> first_sig, second_sig;  // (shared RDP, length)
    for (const auto& h : firsts) first_sig.insert({h.end_rdp(), h.length()});
    for (const auto& h : seconds) second_sig.insert({h.start_rdp(), h.length()});
    for (const auto& h : firsts) {
        const int l = h.length();
        if (second_sig.count({h.end_rdp(), l}) || second_sig.count({h.end_rdp(), l + 1}))
            out.firsts.push_back(h);
    }
    for (const auto& h : seconds) {
        const int l = h.length();
        if (first_sig.count({h.start_rdp(), l}) ||
            (l >= 2 && first_sig.count({h.start_rdp(), l - 1})))
            out.seconds.push_back(h);
    }
    auto cmp = [](const HalfChain& a, const HalfChain& b) {
        if (a.ndd != b.ndd) return a.ndd < b.ndd;
        return a.rdps < b.rdps;
    };
    std::sort(out.firsts.begin(), out.firsts.end(), cmp);
    std::sort(out.seconds.begin(), out.seconds.end(), cmp);
    return out;
}

std::vector<SubgraphPositionSets> position_sets_cycle(const Instance& inst, int K,
                                                      PositionMethod method) {
    std::vector<SubgraphPositionSets> out;
    const int r = inst.rdp_count();
    for (int s = 1; s <= r; ++s) {
        SubgraphReduction sub = reduce_subgraph(inst, s, SubgraphFamily::EefCycle, K);
        SubgraphPositionSets sets;
        sets.root = s;
        // Arcs of the copy induced on vertices >= s (pre-reduction membership,
        // the position rules themselves decide survival).
        std::vector<std::pair<int, int>> arcs;
        for (const Arc& a : inst.arcs()) {
            if (!inst.is_rdp(a.from) || a.from < s || a.to < s) continue;
            if (a.from == a.to && a.from != s) continue;
            arcs.push_back({a.from, a.to});
        }
        auto d_from = sub.dist_from_root;
        auto d_to = sub.dist_to_root;
        const int inf = sub.inf;
        if (method == PositionMethod::ShortestPath) {
            for (auto [u, v] : arcs) {
                std::vector<int> pos;
                if (u == s) {
                    if (d_to[v - 1] <= K - 1) pos.push_back(1);
                } else if (v == s) {
                    for (int k = 2; k <= K; ++k)
                        if (d_from[u - 1] <= k - 1) pos.push_back(k);
                } else {
                    for (int k = 2; k <= K - 1; ++k)
                        if (d_from[u - 1] <= k - 1 && d_to[v - 1] <= K - k) pos.push_back(k);
                }
                if (!pos.empty()) sets.arcs.push_back(PositionedArc{u, v, pos});
            }
        } else {
            // Level-synchronous walk from the root: an arc takes position k when
            // its tail was reached at position k-1 and the cycle can still close
            // within the remaining K-k arcs. The frontier is the exact level
            // set, so positions are not inherited across levels.
            std::map<std::pair<int, int>, std::vector<int>> pos;
            std::vector<bool> level(static_cast<std::size_t>(r) + 1, false);
            level[s] = true;
            for (int k = 1; k <= K; ++k) {
                std::vector<bool> next(level.size(), false);
                for (auto [u, v] : arcs) {
                    if (!level[u]) continue;
                    const int close = v == s ? 0 : (d_to[v - 1] >= inf ? inf : d_to[v - 1]);
                    if (close <= K - k) {
                        pos[{u, v}].push_back(k);
                        if (v != s) next[v] = true;
                    }
                }
                level = next;
            }
            for (auto [u, v] : arcs) {
                auto it = pos.find({u, v});
                if (it != pos.end()) sets.arcs.push_back(PositionedArc{u, v, it->second});
            }
        }
        std::sort(sets.arcs.begin(), sets.arcs.end(),
                  [](const PositionedArc& a, const PositionedArc& b) {
                      return std::tie(a.from, a.to) < std::tie(b.from, b.to);
                  });
        out.push_back(std::move(sets));
    }
    return out;
}

std::vector<PositionedArc> position_sets_chain(const Instance& inst, int L,
                                               PositionMethod method) {
    std::vector<PositionedArc> out;
    if (L < 1 || inst.ndd_count() == 0) return out;
    const int r = inst.rdp_count();
    const auto t = all_pairs_distances(inst);

    std::vector<std::pair<int, int>> arcs;  // includes terminal arcs (to = kTau)
    for (const Arc& a : inst.arcs())
        if (a.from != a.to) arcs.push_back({a.from, a.to});
    for (int v = 1; v <= inst.vertex_count(); ++v) arcs.push_back({v, kTau});
    std::sort(arcs.begin(), arcs.end());

    std::map<std::pair<int, int>, std::vector<int>> pos;
    if (method == PositionMethod::ShortestPath) {
        for (auto [u, v] : arcs) {
            auto& p = pos[{u, v}];
            if (inst.is_ndd(u)) {
                if (v == kTau || L >= 2) p.push_back(1);
            } else if (v == kTau) {
                for (int k = t.d_n[u - 1] + 1; k <= L; ++k) p.push_back(k);
            } else {
                for (int k = t.d_n[u - 1] + 1; k <= L - 1; ++k) p.push_back(k);
            }
        }
    } else {
        // Frontier holds vertices reached at exactly the previous position;
        // NDDs are only at position 0, so their arcs only take position 1.
        std::vector<bool> level(static_cast<std::size_t>(inst.vertex_count()) + 1, false);
        for (int n = r + 1; n <= inst.vertex_count(); ++n) level[n] = true;
        for (int k = 1; k <= L; ++k) {
            std::vector<bool> next(level.size(), false);
            for (auto [u, v] : arcs) {
                if (!level[u]) continue;
                if (v != kTau && k == L) continue;  // the last arc must hit the terminal
                pos[{u, v}].push_back(k);
                if (v != kTau) next[v] = true;
            }
            level = next;
        }
    }
    for (auto [u, v] : arcs) {
        auto it = pos.find({u, v});
        if (it != pos.end() && !it->second.empty())
            out.push_back(PositionedArc{u, v, it->second});
    }
    return out;
}

}  // namespace kex
