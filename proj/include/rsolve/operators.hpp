// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#pragma once

#include "rsolve/bisection.hpp"
#include "rsolve/types.hpp"

namespace rsolve {

/// Inner optimization data of a single (state, action) pair: projected
/// outcome values z = r + gamma v, nominal distribution, and weights, all
/// indexed over `support`. With restricted support these cover only the
/// nominal transition targets; otherwise they span all states with zero
/// reward off the nominal support.
struct PairProblem {
    Vector z; // z = r + gamma * v[support]
    Vector r;
    Vector pbar;
    Vector w;
    std::vector<int> support;
};

PairProblem pair_problem(const Rmdp& model, const AmbiguityConfig& amb,
                         const Vector& v, int s, int a);

/// Full worst-case responses of every action of one state (budget-uncapped).
std::vector<ResponseFunction> state_responses(const Rmdp& model,
                                              const AmbiguityConfig& amb,
                                              const Vector& v, int s);

struct BellmanResult {
    Vector value;
    Policy policy;
};

/// One application of the robust optimality operator with a greedy policy.
/// Parallelized across states. For shared per-state budgets the state value
/// is found by exact bisection when `exact` is set and by eps-bisection to
/// `eps` otherwise.
BellmanResult robust_bellman(const Rmdp& model, const AmbiguityConfig& amb,
                             const Vector& v, bool exact = true,
                             double eps = 1e-10);

/// One application of the robust operator of a fixed policy.
Vector robust_policy_update(const Rmdp& model, const AmbiguityConfig& amb,
                            const Policy& policy, const Vector& v);

inline double sup_norm_diff(const Vector& a, const Vector& b) {
    return (a - b).lpNorm<Eigen::Infinity>();
}

} // namespace rsolve
