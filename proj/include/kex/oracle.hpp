#pragma once

#include "kex/assembly.hpp"
#include "kex/instance.hpp"

namespace kex {

struct OracleResult {
    ExchangeSet best;
    Rational value;
    long long explored = 0;
};

// Exact reference optimum by depth-first packing over the enumerated cycle and
// chain candidates. Independent of the ILP machinery. Throws if the candidate
// count exceeds the cap or the instance has more than 64 vertices.
OracleResult brute_force_optimum(const Instance& inst, int K, int L,
                                 long long candidate_cap = 100000);

// Second, independent reference: full subset enumeration over the candidates.
// Only callable when the candidate count is at most 25.
Rational subset_enumeration_optimum(const Instance& inst, int K, int L);

}  // namespace kex
