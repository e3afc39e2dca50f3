// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#pragma once

#include "rsolve/types.hpp"

#include <random>
#include <string>

namespace rsolve {

/// Randomized inner problem of one (state, action) pair.
struct PairInstance {
    Vector z, pbar, w;
    double kappa = 0.0;
};

/// Randomized per-state problem with a shared budget.
struct StateInstance {
    std::vector<Vector> z, pbar;
    Vector w;
    double kappa = 0.0;
};

/// Draws a pair instance with occasional sparse nominal support and repeated
/// weight values so tie-handling paths are exercised.
PairInstance random_pair(std::mt19937& rng, int n);

StateInstance random_state(std::mt19937& rng, int n, int n_actions);

Rmdp random_mdp(std::mt19937& rng, int n_states, int max_actions);

struct FuzzReport {
    long trials = 0;
    long failures = 0;
    double max_error = 0.0;
    std::string first_failure; // JSON of the first failing instance
};

/// Compares the pivoting response against the reference LP on a budget grid.
FuzzReport fuzz_pair(unsigned seed, long trials, int max_size, int budget_points,
                     double tol);

/// Compares exact bisection and the greedy split against the reference LPs.
FuzzReport fuzz_state(unsigned seed, long trials, int max_size,
                      int max_actions, double tol);

std::string pair_to_json(const PairInstance& inst);
PairInstance pair_from_json(const std::string& text);
std::string state_to_json(const StateInstance& inst);
StateInstance state_from_json(const std::string& text);

/// Replays one serialized instance against the reference solver; returns the
/// observed error.
double replay_pair(const PairInstance& inst);
double replay_state(const StateInstance& inst);

} // namespace rsolve
