// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rsolve/domains.hpp"
#include "rsolve/io.hpp"
#include "rsolve/types.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rsolve;

namespace {

Rmdp two_state_chain() {
    Rmdp m;
    m.n_states = 2;
    m.discount = 0.9;
    m.actions.resize(2);
    m.actions[0].resize(2);
    m.actions[0][0] = {{0, 1}, {0.7, 0.3}, {1.0, 0.0}};
    m.actions[0][1] = {{1}, {1.0}, {2.0}};
    m.actions[1].resize(1);
    m.actions[1][0] = {{0, 1}, {0.5, 0.5}, {0.0, 0.5}};
    m.validate();
    return m;
}

} // namespace

TEST_CASE("validation rejects malformed models") {
    Rmdp m = two_state_chain();
    SUBCASE("bad discount") {
        m.discount = 1.0;
        CHECK_THROWS_AS(m.validate(), BadDiscount);
    }
    SUBCASE("negative probability") {
        m.actions[0][0].prob[0] = -0.1;
        m.actions[0][0].prob[1] = 1.1;
        CHECK_THROWS_AS(m.validate(), NegativeProbability);
    }
    SUBCASE("non stochastic row") {
        m.actions[1][0].prob[0] = 0.9;
        CHECK_THROWS_AS(m.validate(), NonStochasticRow);
    }
    SUBCASE("tiny deviation is renormalized") {
        m.actions[1][0].prob[0] = 0.5 + 4e-10;
        m.validate();
        CHECK(m.actions[1][0].prob[0] + m.actions[1][0].prob[1] ==
              doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("nominal policy value solves the evaluation equations") {
    Rmdp m = two_state_chain();
    std::vector<int> greedy{0, 0};
    Policy pi = Policy::deterministic(greedy, m);
    Vector v = nominal_policy_value(m, pi);
    Vector tv = nominal_policy_update(m, pi, v);
    CHECK((tv - v).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("transition CSV round trip is bit identical") {
    Rmdp m = two_state_chain();
    m.actions[0][0].prob = {1.0 / 3.0, 2.0 / 3.0};
    m.actions[0][0].reward = {0.1234567890123456789, -7.25};
    m.validate();
    IdMap ids;
    ids.intern(10);
    ids.intern(42);
    std::stringstream first;
    save_transitions(first, m, ids);
    LoadedModel re = load_transitions(first, m.discount);
    std::stringstream second;
    save_transitions(second, re.model, re.states);
    CHECK(first.str() == second.str());
    CHECK(re.states.external(0) == 10);
    CHECK(re.states.external(1) == 42);
}

TEST_CASE("duplicate rows merge probabilities and average rewards") {
    std::stringstream in(
        "idstatefrom,idaction,idstateto,probability,reward\n"
        "0,0,1,0.25,4\n"
        "0,0,1,0.75,8\n"
        "1,0,1,1,0\n");
    LoadedModel lm = load_transitions(in, 0.9);
    const SparseRow& row = lm.model.actions[0][0];
    REQUIRE(row.size() == 1);
    CHECK(row.prob[0] == doctest::Approx(1.0));
    CHECK(row.reward[0] == doctest::Approx(7.0)); // probability weighted
}

TEST_CASE("missing CSV column is reported") {
    std::stringstream in("idstatefrom,idaction,idstateto,probability\n");
    CHECK_THROWS_AS(load_transitions(in, 0.9), MissingColumn);
}

TEST_CASE("config files parse and resolve referenced tables") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "rsolve_cfg_test";
    fs::create_directories(dir);
    {
        std::ofstream cfg(dir / "run.cfg");
        cfg << "# comment\n"
            << "discount = 0.95\n"
            << "rectangularity = s\n"
            << "budget_default = 0.25\n"
            << "weights_csv = w.csv\n"
            << "support_restricted = 1\n";
        std::ofstream w(dir / "w.csv");
        w << "idstate,weight\n0,2\n1,0.5\n";
    }
    RunConfig cfg = load_config_file((dir / "run.cfg").string());
    CHECK(cfg.discount == doctest::Approx(0.95));
    CHECK(cfg.ambiguity.kind == Rectangularity::S);
    CHECK(cfg.ambiguity.support_restricted);
    Rmdp m = two_state_chain();
    IdMap ids;
    ids.intern(0);
    ids.intern(1);
    resolve_config(cfg, m, ids);
    CHECK(cfg.ambiguity.weights[0] == doctest::Approx(2.0));
    CHECK(cfg.ambiguity.weights[1] == doctest::Approx(0.5));
    CHECK(cfg.ambiguity.budget(0) == doctest::Approx(0.25));
    fs::remove_all(dir);
}

TEST_CASE("config rejects bad keys and values") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "rsolve_cfg_bad";
    fs::create_directories(dir);
    auto write_and_load = [&](const std::string& text) {
        std::ofstream(dir / "bad.cfg") << text;
        return load_config_file((dir / "bad.cfg").string());
    };
    CHECK_THROWS_AS(write_and_load("rectangularity = diag\n"),
                    UnsupportedRectangularity);
    CHECK_THROWS_AS(write_and_load("budget_default = -1\n"), NegativeBudget);
    CHECK_THROWS_AS(write_and_load("no_such_key = 1\n"), Error);
    fs::remove_all(dir);
}

TEST_CASE("value and policy files round trip through external ids") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "rsolve_vp_test";
    fs::create_directories(dir);
    Rmdp m = two_state_chain();
    IdMap ids;
    ids.intern(7);
    ids.intern(3);
    Vector v(2);
    v << 1.5, -2.25;
    save_value_file((dir / "v.csv").string(), v, ids);
    Vector back = load_value_file((dir / "v.csv").string(), ids);
    CHECK(back == v);
    Policy pi;
    pi.action_dist = {Vector(2), Vector(1)};
    pi.action_dist[0] << 0.25, 0.75;
    pi.action_dist[1] << 1.0;
    save_policy_file((dir / "p.csv").string(), pi, ids);
    Policy pback = load_policy_file((dir / "p.csv").string(), m, ids);
    CHECK(pback.action_dist[0] == pi.action_dist[0]);
    CHECK(pback.action_dist[1] == pi.action_dist[1]);
    fs::remove_all(dir);
}

TEST_CASE("weights derived from a value estimate") {
    Vector v(3);
    v << 0.0, 1.0, 5.0;
    Vector w = value_based_weights(v);
    CHECK(w[0] == doctest::Approx(2.0 / 3.0));
    CHECK(w[1] == doctest::Approx(1.0 / 3.0));
    CHECK(w[2] == doctest::Approx(1.0));
    Vector flat = value_based_weights(Vector::Constant(4, 3.0));
    CHECK(flat == Vector::Ones(4));
}
