#pragma once

#include <map>
#include <utility>
#include <vector>

#include "kex/instance.hpp"
#include "kex/rational.hpp"

namespace kex {

// A cycle over RDPs, stored with its lowest-index vertex first.
struct Cycle {
    std::vector<int> vertices;
    Rational weight;
    friend bool operator==(const Cycle& a, const Cycle& b) { return a.vertices == b.vertices; }
};

// A chain: NDD, then RDPs in order; the terminal donation is implicit and its
// weight (from the last vertex) is included in `weight`.
struct Chain {
    int ndd = 0;
    std::vector<int> rdps;
    Rational weight;
    int length() const { return 1 + static_cast<int>(rdps.size()); }
    friend bool operator==(const Chain& a, const Chain& b) {
        return a.ndd == b.ndd && a.rdps == b.rdps;
    }
};

// A simple path of RDPs representing half of a cycle.
struct HalfCycle {
    std::vector<int> vertices;  // v^s .. v^e, k = vertices.size()-1 arcs
    Rational weight;
    int start() const { return vertices.front(); }
    int end() const { return vertices.back(); }
    int length() const { return static_cast<int>(vertices.size()) - 1; }
    bool is_loop() const { return vertices.size() == 1; }
};

struct HalfChain {
    enum class Kind { First, Second, LengthOne };
    Kind kind = Kind::First;
    int ndd = 0;                // First / LengthOne only
    std::vector<int> rdps;      // First: after the NDD; Second: before tau
    Rational weight;            // Second / LengthOne include the tau-arc weight
    int length() const { return static_cast<int>(rdps.size()); }
    int start_rdp() const { return rdps.front(); }
    int end_rdp() const { return rdps.back(); }
};

struct HalfChainSets {
    std::vector<HalfChain> firsts;
    std::vector<HalfChain> seconds;
    std::vector<HalfChain> length_ones;
};

enum class PositionMethod { Bfs, ShortestPath };

// Allowed positions per arc, for position-indexed formulations. For cycles the
// sets are per subgraph copy (rooted at its lowest RDP); for chains there is a
// single set per arc, with `to == kTau` for terminal arcs.
struct PositionedArc {
    int from = 0;
    int to = 0;  // kTau for terminal arcs
    std::vector<int> positions;
};

struct SubgraphPositionSets {
    int root = 0;
    std::vector<PositionedArc> arcs;  // arcs with empty sets omitted
};

std::vector<Cycle> enumerate_cycles(const Instance& inst, int K);
std::vector<Chain> enumerate_chains(const Instance& inst, int L);

// Half-cycle construction: length at most ceil(K/2); the lowest-index vertex
// must be an endpoint (and the start when K is odd and the path has maximal
// length); a relaxed partner-existence filter removes halves that cannot pair
// up on endpoints and length alone.
std::vector<HalfCycle> enumerate_half_cycles(const Instance& inst, int K);

// First halves carry at most floor(L/2) RDPs, second halves at most
// ceil(L/2); a half survives only if a partner with matching endpoint and a
// compatible length exists.
HalfChainSets enumerate_half_chains(const Instance& inst, int L);

std::vector<SubgraphPositionSets> position_sets_cycle(const Instance& inst, int K,
                                                      PositionMethod method);
std::vector<PositionedArc> position_sets_chain(const Instance& inst, int L,
                                               PositionMethod method);

}  // namespace kex
