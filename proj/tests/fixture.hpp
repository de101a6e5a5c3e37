#pragma once

// Shared golden fixture: 4 recipient-donor pairs, 2 altruistic donors,
// unit weights on every arc including the terminal donations. The known
// optimum for K=2, L=3 is 6.
#include <vector>

#include "kex/instance.hpp"

inline kex::Instance golden_instance() {
    using kex::Arc;
    using kex::Rational;
    std::vector<Arc> arcs{{1, 2}, {1, 4}, {2, 3}, {3, 4}, {4, 1}, {4, 2}, {5, 1}, {6, 2}};
    std::vector<Rational> w(arcs.size(), Rational(1));
    std::vector<Rational> tw(6, Rational(1));
    return kex::Instance(4, 2, std::move(arcs), std::move(w), std::move(tw));
}

// The same graph with terminal donations worth nothing, for tests that focus
// on arc weights only.
inline kex::Instance golden_instance_zero_tau() {
    using kex::Arc;
    using kex::Rational;
    std::vector<Arc> arcs{{1, 2}, {1, 4}, {2, 3}, {3, 4}, {4, 1}, {4, 2}, {5, 1}, {6, 2}};
    std::vector<Rational> w(arcs.size(), Rational(1));
    std::vector<Rational> tw(6, Rational(0));
    return kex::Instance(4, 2, std::move(arcs), std::move(w), std::move(tw));
}
