// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#pragma once

#include "rsolve/operators.hpp"

namespace rsolve {

enum class EvalMethod {
    Auto,                    // dense policy iteration up to 1000 states
    DensePolicyIteration,    // alternate nature response / dense linear solve
    ModifiedPolicyIteration, // frozen-response sweeps between refreshes
    ValueIteration,          // plain fixed-policy operator iteration
};

struct IterRecord {
    double residual = 0.0;
    double epsilon = 0.0;
    double seconds = 0.0;
};

struct SolveResult {
    Vector value;
    Policy policy;
    std::vector<IterRecord> iterations;
    bool converged = false;
    std::vector<Vector> trace; // per-iteration values when tracking is on
};

/// Worst-case transition kernel and expected rewards of a fixed policy at a
/// fixed value estimate, stored sparsely per state.
struct FrozenResponse {
    std::vector<std::vector<int>> index;
    std::vector<Vector> prob;
    Vector reward;
};

FrozenResponse freeze_response(const Rmdp& model, const AmbiguityConfig& amb,
                               const Policy& policy, const Vector& v);

Vector apply_frozen(const FrozenResponse& fr, double discount, const Vector& v);

/// Robust value of a fixed policy: iterates until the fixed-policy operator's
/// residual drops to `residual_tol`. Auto picks the dense linear-algebra path
/// for up to 1000 states and frozen-response sweeps above that.
Vector evaluate_policy(const Rmdp& model, const AmbiguityConfig& amb,
                       const Policy& policy, double residual_tol,
                       EvalMethod method = EvalMethod::Auto,
                       int mpi_sweeps = 100, const Vector* v0 = nullptr);

/// Optimistic policy iteration with progressively tightened approximate
/// policy evaluations. Terminates once the optimality-operator residual
/// certifies that the greedy value is within delta of optimal.
SolveResult ppi(const Rmdp& model, const AmbiguityConfig& amb, double delta,
                EvalMethod method = EvalMethod::Auto, int mpi_sweeps = 100,
                long max_iterations = 10000, const Vector* v0 = nullptr,
                bool track_values = false);

/// Robust value iteration to a target optimality-operator residual.
SolveResult robust_vi(const Rmdp& model, const AmbiguityConfig& amb,
                      double residual_target, long max_iterations = 2000000,
                      const Vector* v0 = nullptr);

/// Robust modified policy iteration: greedy step followed by a bounded number
/// of fixed-policy sweeps. With eval_sweeps == 0 this is value iteration.
SolveResult rmpi(const Rmdp& model, const AmbiguityConfig& amb,
                 double residual_target, long eval_sweeps = 1000,
                 long max_iterations = 100000, const Vector* v0 = nullptr);

} // namespace rsolve
