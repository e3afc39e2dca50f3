// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#include "rsolve/domains.hpp"
#include "rsolve/fuzz.hpp"
#include "rsolve/io.hpp"
#include "rsolve/oracle.hpp"
#include "rsolve/solvers.hpp"

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace rsolve;

IdMap identity_ids(int n) {
    IdMap ids;
    for (int i = 0; i < n; ++i) ids.intern(i);
    return ids;
}

Rmdp build_domain(const std::string& domain, int capacity, int states,
                  unsigned seed) {
    if (domain == "inventory") return make_inventory(capacity);
    if (domain == "cartpole") return make_cartpole(states, seed);
    throw Error("unknown domain: " + domain);
}

struct CommonSolveArgs {
    std::string transitions, config, algorithm = "ppi";
    std::string value_out, policy_out;
    double delta = 1e-4;
    int threads = 0;
};

void set_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

int cmd_solve(const CommonSolveArgs& args) {
    set_threads(args.threads);
    RunConfig cfg = load_config_file(args.config);
    LoadedModel lm = load_transitions_file(args.transitions, cfg.discount);
    resolve_config(cfg, lm.model, lm.states);
    SolveResult res;
    double target = 0.5 * (1.0 - cfg.discount) * args.delta;
    if (args.algorithm == "ppi")
        res = ppi(lm.model, cfg.ambiguity, args.delta);
    else if (args.algorithm == "vi")
        res = robust_vi(lm.model, cfg.ambiguity, target);
    else if (args.algorithm == "rmpi")
        res = rmpi(lm.model, cfg.ambiguity, target);
    else
        throw Error("unknown algorithm: " + args.algorithm);
    if (!res.converged) {
        std::cerr << "solver did not reach the requested accuracy\n";
        return 1;
    }
    const IterRecord& last = res.iterations.back();
    std::cout << "states=" << lm.model.n_states
              << " iterations=" << res.iterations.size()
              << " residual=" << last.residual << " seconds=" << last.seconds
              << "\n";
    Vector p0 = lm.model.initial_dist.size()
                    ? lm.model.initial_dist
                    : Vector::Constant(lm.model.n_states,
                                       1.0 / lm.model.n_states);
    std::cout << "return=" << p0.dot(res.value) << "\n";
    if (!args.value_out.empty())
        save_value_file(args.value_out, res.value, lm.states);
    if (!args.policy_out.empty())
        save_policy_file(args.policy_out, res.policy, lm.states);
    return 0;
}

int cmd_bench(const std::string& domain, int capacity, int states,
              unsigned seed, const std::string& rect,
              const std::string& weights_kind, double budget,
              const std::string& algorithms, double delta,
              const std::string& output, int threads) {
    set_threads(threads);
    Rmdp model = build_domain(domain, capacity, states, seed);
    AmbiguityConfig amb;
    amb.kind = rect == "s" ? Rectangularity::S : Rectangularity::SA;
    amb.budget_default = budget;
    amb.support_restricted = true;
    if (weights_kind == "value") {
        Vector v0 = nominal_bellman(model, Vector::Zero(model.n_states)).first;
        amb.weights = value_based_weights(v0);
    } else {
        amb.weights = Vector::Ones(model.n_states);
    }
    std::ofstream out(output);
    if (!out) throw Error("cannot write file: " + output);
    out << "problem,ambiguity,weights,S,A,algorithm,seconds,iterations,residual\n";
    std::stringstream algos(algorithms);
    std::string algo;
    while (std::getline(algos, algo, ',')) {
        double target = 0.5 * (1.0 - model.discount) * delta;
        double best_sec = 0.0;
        SolveResult res;
        std::vector<double> secs;
        for (int rep = 0; rep < 3; ++rep) {
            auto t0 = std::chrono::steady_clock::now();
            if (algo == "ppi")
                res = ppi(model, amb, delta);
            else if (algo == "vi")
                res = robust_vi(model, amb, target);
            else if (algo == "rmpi")
                res = rmpi(model, amb, target);
            else
                throw Error("unknown algorithm: " + algo);
            secs.push_back(std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - t0)
                               .count());
        }
        std::sort(secs.begin(), secs.end());
        best_sec = secs[1]; // median of three
        out << domain << ',' << rect << ',' << weights_kind << ','
            << model.n_states << ',' << model.state_action_pairs() << ','
            << algo << ',' << format_double(best_sec) << ','
            << res.iterations.size() << ','
            << format_double(res.iterations.back().residual) << '\n';
    }
    return 0;
}

int cmd_verify(unsigned seed, long trials, int max_size, int max_actions,
               double tol, const std::string& replay,
               const std::string& dump) {
    if (!replay.empty()) {
        std::ifstream in(replay);
        if (!in) throw Error("cannot open file: " + replay);
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        double err = text.find("\"pair\"") != std::string::npos
                         ? replay_pair(pair_from_json(text))
                         : replay_state(state_from_json(text));
        std::cout << "replay error=" << err << "\n";
        return err <= tol ? 0 : 1;
    }
    FuzzReport rp = fuzz_pair(seed, trials, max_size, 5, tol);
    FuzzReport rs = fuzz_state(seed + 1, trials / 4, max_size, max_actions, tol);
    std::cout << "pair trials=" << rp.trials << " failures=" << rp.failures
              << " max_error=" << rp.max_error << "\n";
    std::cout << "state trials=" << rs.trials << " failures=" << rs.failures
              << " max_error=" << rs.max_error << "\n";
    if (rp.failures + rs.failures == 0) return 0;
    if (!dump.empty()) {
        std::ofstream out(dump);
        out << (rp.failures ? rp.first_failure : rs.first_failure);
        std::cout << "first failing instance written to " << dump << "\n";
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"robust MDP solver with weighted L1 ambiguity sets"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "write a benchmark domain as CSV");
    std::string g_domain = "inventory", g_output = "transitions.csv";
    int g_capacity = 30, g_states = 100;
    unsigned g_seed = 1;
    gen->add_option("--domain", g_domain, "inventory or cartpole");
    gen->add_option("--capacity", g_capacity, "inventory capacity");
    gen->add_option("--states", g_states, "cart-pole aggregate state count");
    gen->add_option("--seed", g_seed, "cart-pole sampling seed");
    gen->add_option("--output", g_output, "transition CSV path");

    // solve
    auto* sol = app.add_subcommand("solve", "solve a robust MDP from CSV");
    CommonSolveArgs s;
    sol->add_option("--transitions", s.transitions, "transition CSV")->required();
    sol->add_option("--config", s.config, "ambiguity config file")->required();
    sol->add_option("--algorithm", s.algorithm, "ppi, vi, or rmpi");
    sol->add_option("--delta", s.delta, "value accuracy target");
    sol->add_option("--output", s.value_out, "value CSV output");
    sol->add_option("--policy-out", s.policy_out, "policy CSV output");
    sol->add_option("--threads", s.threads, "worker thread count");

    // bench
    auto* ben = app.add_subcommand("bench", "time solvers on a built-in domain");
    std::string b_domain = "inventory", b_rect = "sa", b_weights = "uniform";
    std::string b_algos = "ppi,vi", b_output = "bench.csv";
    int b_capacity = 30, b_states = 100, b_threads = 0;
    unsigned b_seed = 1;
    double b_budget = 0.5, b_delta = 1e-4;
    ben->add_option("--domain", b_domain, "inventory or cartpole");
    ben->add_option("--capacity", b_capacity, "inventory capacity");
    ben->add_option("--states", b_states, "cart-pole aggregate state count");
    ben->add_option("--seed", b_seed, "cart-pole sampling seed");
    ben->add_option("--rectangularity", b_rect, "sa or s");
    ben->add_option("--weights", b_weights, "uniform or value");
    ben->add_option("--budget", b_budget, "ambiguity budget");
    ben->add_option("--algorithms", b_algos, "comma separated list");
    ben->add_option("--delta", b_delta, "value accuracy target");
    ben->add_option("--output", b_output, "report CSV path");
    ben->add_option("--threads", b_threads, "worker thread count");

    // verify
    auto* ver = app.add_subcommand(
        "verify", "differential check against the reference LP solver");
    unsigned v_seed = 42;
    long v_trials = 200;
    int v_max_size = 12, v_max_actions = 4;
    double v_tol = 1e-7;
    std::string v_replay, v_dump;
    ver->add_option("--seed", v_seed, "random seed");
    ver->add_option("--trials", v_trials, "number of random instances");
    ver->add_option("--max-size", v_max_size, "largest support size");
    ver->add_option("--max-actions", v_max_actions, "largest action count");
    ver->add_option("--tol", v_tol, "acceptable deviation");
    ver->add_option("--replay", v_replay, "re-run a dumped instance");
    ver->add_option("--dump", v_dump, "write the first failing instance here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            Rmdp model = build_domain(g_domain, g_capacity, g_states, g_seed);
            save_transitions_file(g_output, model, identity_ids(model.n_states));
            std::cout << "states=" << model.n_states
                      << " pairs=" << model.state_action_pairs() << "\n";
            return 0;
        }
        if (sol->parsed()) return cmd_solve(s);
        if (ben->parsed())
            return cmd_bench(b_domain, b_capacity, b_states, b_seed, b_rect,
                             b_weights, b_budget, b_algos, b_delta, b_output,
                             b_threads);
        if (ver->parsed())
            return cmd_verify(v_seed, v_trials, v_max_size, v_max_actions,
                              v_tol, v_replay, v_dump);
    } catch (const NumericalFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
