// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#include <doctest.h>

#include "rsolve/fuzz.hpp"
#include "rsolve/homotopy.hpp"

#include <random>

using namespace rsolve;

namespace {

// four outcomes, uniform weights: a single receiver soaks up all mass
ResponseFunction uniform_example() {
    Vector z(4), pbar(4), w(4);
    z << 4, 3, 2, 1;
    pbar << 0.2, 0.3, 0.4, 0.1;
    w.setOnes();
    return homotopy_response(z, pbar, w);
}

} // namespace

TEST_CASE("uniform-weight response traces the known breakpoints") {
    ResponseFunction f = uniform_example();
    REQUIRE(f.breakpoints() == 4);
    CHECK(f.xi[0] == doctest::Approx(0.0));
    CHECK(f.xi[1] == doctest::Approx(0.4));
    CHECK(f.xi[2] == doctest::Approx(1.0));
    CHECK(f.xi[3] == doctest::Approx(1.8));
    CHECK(f.q[0] == doctest::Approx(2.6));
    CHECK(f.q[1] == doctest::Approx(2.0));
    CHECK(f.q[2] == doctest::Approx(1.4));
    CHECK(f.q[3] == doctest::Approx(1.0));
}

TEST_CASE("interior evaluation interpolates value and distribution") {
    ResponseFunction f = uniform_example();
    ResponseEval ev = eval_response(f, 0.7);
    CHECK(ev.q == doctest::Approx(1.7));
    CHECK(ev.p[0] == doctest::Approx(0.0));
    CHECK(ev.p[1] == doctest::Approx(0.15));
    CHECK(ev.p[2] == doctest::Approx(0.4));
    CHECK(ev.p[3] == doctest::Approx(0.45));
    CHECK(response_value(f, 0.7) == doctest::Approx(1.7));
    // beyond the last breakpoint the response saturates
    CHECK(response_value(f, 5.0) == doctest::Approx(1.0));
    CHECK(eval_response(f, 5.0).p[3] == doctest::Approx(1.0));
}

TEST_CASE("subgradients at interior points and breakpoints") {
    ResponseFunction f = uniform_example();
    auto [l1, r1] = subgradient(f, 0.2);
    CHECK(l1 == doctest::Approx(-1.5));
    CHECK(r1 == doctest::Approx(-1.5));
    auto [l2, r2] = subgradient(f, 0.4);
    CHECK(l2 == doctest::Approx(-1.5));
    CHECK(r2 == doctest::Approx(-1.0));
    auto [l3, r3] = subgradient(f, 1.8);
    CHECK(l3 == doctest::Approx(-0.5));
    CHECK(r3 == 0.0);
    CHECK(subgradient(f, 3.0) == std::pair<double, double>{0.0, 0.0});
}

TEST_CASE("inverse recovers budgets from values") {
    ResponseFunction f = uniform_example();
    CHECK(inverse_response(f, 2.6) == 0.0);
    CHECK(inverse_response(f, 3.0) == 0.0);
    CHECK(inverse_response(f, 1.7) == doctest::Approx(0.7));
    CHECK(inverse_response(f, 1.0) == doctest::Approx(1.8));
    CHECK(std::isinf(inverse_response(f, 0.9)));
    CHECK(inverse_response(f, 1.0 - 1e-12, 1e-9) == doctest::Approx(1.8));
}

TEST_CASE("distinct weights select one receiver per weight level") {
    Vector z(4), pbar(4), w(4);
    z << 2.9, 0.9, 1.5, 0.0;
    pbar << 0.2, 0.3, 0.3, 0.2;
    w << 1, 1, 2, 2;
    std::vector<int> recv = nondominated_receivers(z, w);
    REQUIRE(recv.size() == 2);
    CHECK(recv[0] == 3);
    CHECK(recv[1] == 1);
    ResponseFunction f = homotopy_response(z, pbar, w);
    // mass flows through the expected donor/receiver pairs in slope order
    REQUIRE(f.segments.size() == 4);
    CHECK(f.segments[0].donor == 0);
    CHECK(f.segments[0].receiver == 1);
    CHECK(f.segments[1].donor == 1);
    CHECK(f.segments[1].receiver == 3);
    CHECK(f.segments[2].donor == 2);
    CHECK(f.segments[2].receiver == 3);
    CHECK(f.segments[3].donor == 1);
    CHECK(f.segments[3].receiver == 3);
}

TEST_CASE("structural invariants hold on random instances") {
    std::mt19937 rng(31);
    for (int t = 0; t < 200; ++t) {
        int n = std::uniform_int_distribution<int>(2, 25)(rng);
        PairInstance inst = random_pair(rng, n);
        ResponseFunction f = homotopy_response(inst.z, inst.pbar, inst.w);
        REQUIRE(f.breakpoints() == f.segments.size() + 1);
        CHECK(f.xi[0] == 0.0);
        CHECK(f.q[0] == doctest::Approx(inst.pbar.dot(inst.z)));
        for (size_t k = 0; k < f.segments.size(); ++k) {
            CHECK(f.xi[k + 1] > f.xi[k]);
            CHECK(f.segments[k].slope < 0.0);
            if (k > 0)
                CHECK(f.segments[k].slope >= f.segments[k - 1].slope - 1e-12);
        }
        // saturated distribution is a simplex vertex set on minimal values
        ResponseEval tail = eval_response(f, f.max_budget());
        CHECK(tail.p.sum() == doctest::Approx(1.0));
        CHECK(tail.p.minCoeff() >= 0.0);
    }
}

TEST_CASE("receiver pruning does not change the function") {
    std::mt19937 rng(77);
    for (int t = 0; t < 100; ++t) {
        int n = std::uniform_int_distribution<int>(2, 15)(rng);
        PairInstance inst = random_pair(rng, n);
        ResponseFunction fp = homotopy_response(inst.z, inst.pbar, inst.w,
                                                std::numeric_limits<double>::infinity(),
                                                true);
        ResponseFunction fu = homotopy_response(inst.z, inst.pbar, inst.w,
                                                std::numeric_limits<double>::infinity(),
                                                false);
        double reach = std::max(fp.max_budget(), fu.max_budget()) * 1.05;
        for (int k = 0; k <= 16; ++k) {
            double xi = reach * k / 16.0;
            CHECK(response_value(fp, xi) ==
                  doctest::Approx(response_value(fu, xi)).epsilon(1e-10));
        }
    }
}

TEST_CASE("budget cap stops the trace early with identical values") {
    std::mt19937 rng(5);
    for (int t = 0; t < 50; ++t) {
        PairInstance inst = random_pair(rng, 10);
        ResponseFunction full = homotopy_response(inst.z, inst.pbar, inst.w);
        double cap = 0.5 * full.max_budget();
        ResponseFunction capped = homotopy_response(inst.z, inst.pbar, inst.w, cap);
        CHECK(capped.max_budget() <= cap + 1e-12);
        CHECK(response_value(capped, cap) ==
              doctest::Approx(response_value(full, cap)).epsilon(1e-12));
    }
}

TEST_CASE("degenerate inputs") {
    Vector z1(1), p1(1), w1(1);
    z1 << 2.0;
    p1 << 1.0;
    w1 << 1.0;
    ResponseFunction f = homotopy_response(z1, p1, w1);
    CHECK(f.breakpoints() == 1);
    CHECK(response_value(f, 10.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(homotopy_response(Vector(), Vector(), Vector()),
                    DegenerateSupport);
    CHECK_THROWS_AS(sa_worst_case(z1, p1, w1, -0.5), NegativeBudget);
}
