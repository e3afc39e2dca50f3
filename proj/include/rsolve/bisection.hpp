// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#pragma once

#include "rsolve/homotopy.hpp"

namespace rsolve {

/// Total budget nature needs so that every action's worst-case value is at
/// most u; +infinity when some action cannot be pushed that low.
double total_budget_needed(const std::vector<ResponseFunction>& fs, double u,
                           double tol = 0.0);

/// Approximate state value under a shared per-state budget: bisects the value
/// until the bracket width drops to 2*eps and returns the bracket midpoint.
double bisect_eps(const std::vector<ResponseFunction>& fs, double kappa,
                  double eps);

/// Exact state value under a shared per-state budget: bisects over the merged
/// list of candidate values (the function values at all breakpoints) down to
/// a consecutive pair, then interpolates along the linear piece.
double bisect_exact(const std::vector<ResponseFunction>& fs, double kappa);

/// Greedy state solution: value, maximizing action distribution, per-action
/// budget split, the attaining transition distributions, and the multipliers
/// of the budget constraint (lambda) and of the per-action value constraints
/// (alpha).
struct SBellmanResult {
    double u = 0.0;
    Vector d;
    std::vector<double> xi;
    std::vector<Vector> worst_p;
    double lambda = 0.0;
    Vector alpha;
};

SBellmanResult recover_greedy(const std::vector<ResponseFunction>& fs,
                              double kappa, double u_star);

/// Solves one state of the shared-budget optimality operator.
SBellmanResult s_bellman(const std::vector<ResponseFunction>& fs, double kappa,
                         bool exact = true, double eps = 1e-10);

/// Worst-case value of a fixed action distribution under a shared budget:
/// nature splits the budget across actions to minimize sum_a d_a q_a(xi_a).
/// Solved exactly by consuming merged segments in order of steepest weighted
/// slope.
struct SPolicyResult {
    double value = 0.0;
    std::vector<double> xi;
};

SPolicyResult s_bellman_policy(const std::vector<ResponseFunction>& fs,
                               const Vector& d, double kappa);

} // namespace rsolve
