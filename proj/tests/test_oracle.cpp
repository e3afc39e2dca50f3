// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#include <doctest.h>

#include "rsolve/fuzz.hpp"
#include "rsolve/homotopy.hpp"
#include "rsolve/oracle.hpp"

#include <random>

using namespace rsolve;

TEST_CASE("simplex solves a textbook program") {
    // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> optimum 36
    Eigen::MatrixXd A(3, 5);
    A << 1, 0, 1, 0, 0, //
        0, 2, 0, 1, 0,  //
        3, 2, 0, 0, 1;
    Vector b(3), c(5);
    b << 4, 12, 18;
    c << -3, -5, 0, 0, 0;
    LpResult r = solve_lp(A, b, c);
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.objective == doctest::Approx(-36.0));
    CHECK(r.x[0] == doctest::Approx(2.0));
    CHECK(r.x[1] == doctest::Approx(6.0));
}

TEST_CASE("simplex reports infeasible and unbounded programs") {
    // x = -1, x >= 0 is infeasible
    Eigen::MatrixXd A(1, 1);
    A << 1;
    Vector b(1), c(1);
    b << -1;
    c << 1;
    CHECK(solve_lp(A, b, c).status == LpResult::Status::Infeasible);
    // min -x - y s.t. x - y = 0 is unbounded
    Eigen::MatrixXd A2(1, 2);
    A2 << 1, -1;
    Vector b2(1), c2(2);
    b2 << 0;
    c2 << -1, -1;
    CHECK(solve_lp(A2, b2, c2).status == LpResult::Status::Unbounded);
}

TEST_CASE("reference worst case matches hand-computed values") {
    Vector z(4), pbar(4), w(4);
    z << 4, 3, 2, 1;
    pbar << 0.2, 0.3, 0.4, 0.1;
    w.setOnes();
    CHECK(lp_worst_case(z, pbar, w, 0.0).value == doctest::Approx(2.6));
    CHECK(lp_worst_case(z, pbar, w, 0.4).value == doctest::Approx(2.0));
    CHECK(lp_worst_case(z, pbar, w, 0.7).value == doctest::Approx(1.7));
    CHECK(lp_worst_case(z, pbar, w, 1.8).value == doctest::Approx(1.0));
    CHECK(lp_worst_case(z, pbar, w, 99.0).value == doctest::Approx(1.0));
    WorstCaseLp at = lp_worst_case(z, pbar, w, 0.7);
    CHECK(at.p.sum() == doctest::Approx(1.0));
    CHECK((at.p - pbar).cwiseAbs().sum() <= 0.7 + 1e-9);
}

TEST_CASE("reference inverse budget inverts the worst case") {
    Vector z(4), pbar(4), w(4);
    z << 4, 3, 2, 1;
    pbar << 0.2, 0.3, 0.4, 0.1;
    w.setOnes();
    CHECK(lp_inverse_budget(z, pbar, w, 2.6) == doctest::Approx(0.0));
    CHECK(lp_inverse_budget(z, pbar, w, 1.7) == doctest::Approx(0.7));
    CHECK(lp_inverse_budget(z, pbar, w, 1.0) == doctest::Approx(1.8));
    CHECK(std::isinf(lp_inverse_budget(z, pbar, w, 0.5)));
}

TEST_CASE("pivoting response agrees with the reference LP") {
    FuzzReport rep = fuzz_pair(2024, 300, 15, 6, 1e-8);
    INFO(rep.first_failure);
    CHECK(rep.failures == 0);
    CHECK(rep.max_error < 1e-8);
}

TEST_CASE("shared-budget solutions agree with the reference LPs") {
    FuzzReport rep = fuzz_state(2025, 80, 10, 4, 1e-7);
    INFO(rep.first_failure);
    CHECK(rep.failures == 0);
    CHECK(rep.max_error < 1e-7);
}

TEST_CASE("serialized instances replay identically") {
    std::mt19937 rng(9);
    PairInstance inst = random_pair(rng, 6);
    PairInstance back = pair_from_json(pair_to_json(inst));
    CHECK(back.z == inst.z);
    CHECK(back.pbar == inst.pbar);
    CHECK(back.w == inst.w);
    CHECK(back.kappa == inst.kappa);
    StateInstance st = random_state(rng, 5, 3);
    StateInstance sback = state_from_json(state_to_json(st));
    CHECK(sback.kappa == st.kappa);
    CHECK(sback.z.size() == st.z.size());
    CHECK(replay_state(sback) == replay_state(st));
}
