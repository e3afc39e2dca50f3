// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#include <doctest.h>

#include "rsolve/domains.hpp"
#include "rsolve/solvers.hpp"

using namespace rsolve;

TEST_CASE("inventory model has the expected shape") {
    const int cap = 30;
    Rmdp m = make_inventory(cap);
    CHECK(m.n_states == cap + cap / 3); // levels -cap/3 .. cap-1
    CHECK(m.discount == doctest::Approx(0.995));
    // the fullest level cannot order
    CHECK(m.action_count(m.n_states - 1) == 1);
    // the emptiest level can place the largest order
    CHECK(m.action_count(0) == cap / 2);
    // all mass starts at the zero-inventory level
    CHECK(m.initial_dist[inventory_initial_state(cap)] == 1.0);
    CHECK(m.initial_dist.sum() == doctest::Approx(1.0));
}

TEST_CASE("inventory capacity must divide evenly") {
    CHECK_THROWS_AS(make_inventory(20), BadCapacity);
    CHECK_THROWS_AS(make_inventory(-6), BadCapacity);
    CHECK_NOTHROW(make_inventory(6));
}

TEST_CASE("inventory rewards follow the cost model") {
    const int cap = 30, backlog = 10;
    Rmdp m = make_inventory(cap);
    const int s0 = inventory_initial_state(cap); // level 0
    // en route to a non-clamped target level the demand is determined, so the
    // stored reward can be recomputed from the cost model directly
    const int o = 5, target_level = 2, demand = 3; // stock 5, sold 3
    const SparseRow& row = m.actions[s0][o];
    double stored = std::numeric_limits<double>::quiet_NaN();
    for (size_t k = 0; k < row.size(); ++k)
        if (row.index[k] == target_level + backlog) stored = row.reward[k];
    double expected = 1.6 * demand - 5.99 - 1.0 * o - 0.1 * target_level;
    CHECK(stored == doctest::Approx(expected));
    // backlogged successor pays the backlog penalty instead of holding
    double stored_neg = std::numeric_limits<double>::quiet_NaN();
    for (size_t k = 0; k < row.size(); ++k)
        if (row.index[k] == -2 + backlog) stored_neg = row.reward[k];
    CHECK(stored_neg == doctest::Approx(1.6 * 7 - 5.99 - 5.0 - 0.15 * 2));
}

TEST_CASE("inventory solves to a threshold restocking policy") {
    Rmdp m = make_inventory(30);
    AmbiguityConfig amb;
    amb.kind = Rectangularity::SA;
    amb.budget_default = 0.0;
    amb.support_restricted = true;
    amb.ensure_weights(m.n_states);
    SolveResult r = ppi(m, amb, 1e-3);
    REQUIRE(r.converged);
    auto order_of = [&](int s) {
        int best = 0;
        r.policy.action_dist[s].maxCoeff(&best);
        return best;
    };
    // low levels place the largest order, high levels none
    CHECK(order_of(0) == 14);
    CHECK(order_of(m.n_states - 1) == 0);
    // the order size is monotonically nonincreasing in the level
    for (int s = 1; s < m.n_states; ++s)
        CHECK(order_of(s) <= order_of(s - 1));
}

TEST_CASE("cart-pole aggregation is reproducible and well formed") {
    Rmdp a = make_cartpole(60, 7);
    Rmdp b = make_cartpole(60, 7);
    CHECK(a.n_states == 60);
    for (int s = 0; s < a.n_states; ++s) {
        REQUIRE(a.action_count(s) == 2);
        for (int act = 0; act < 2; ++act) {
            CHECK(a.actions[s][act].index == b.actions[s][act].index);
            CHECK(a.actions[s][act].prob == b.actions[s][act].prob);
        }
    }
    // terminal aggregate absorbs with zero reward
    const SparseRow& term = a.actions[a.n_states - 1][0];
    REQUIRE(term.size() == 1);
    CHECK(term.index[0] == a.n_states - 1);
    CHECK(term.reward[0] == 0.0);
    // a different seed yields a different aggregation
    Rmdp c = make_cartpole(60, 8);
    bool differs = false;
    for (int s = 0; s < a.n_states && !differs; ++s)
        differs = a.actions[s][0].index != c.actions[s][0].index ||
                  a.actions[s][0].prob != c.actions[s][0].prob;
    CHECK(differs);
}

TEST_CASE("cart-pole values decrease with ambiguity budget") {
    Rmdp m = make_cartpole(40, 3);
    AmbiguityConfig amb;
    amb.kind = Rectangularity::SA;
    amb.support_restricted = true;
    amb.ensure_weights(m.n_states);
    amb.budget_default = 0.0;
    SolveResult nominal = ppi(m, amb, 1e-4);
    amb.budget_default = 0.3;
    SolveResult robust = ppi(m, amb, 1e-4);
    REQUIRE(nominal.converged);
    REQUIRE(robust.converged);
    CHECK((nominal.value - robust.value).minCoeff() >= -1e-6);
    CHECK(nominal.value.mean() > robust.value.mean());
}
