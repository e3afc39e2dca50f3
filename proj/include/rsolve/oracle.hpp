// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#pragma once

#include "rsolve/types.hpp"

namespace rsolve {

/// Result of a standard-form linear program min c'x s.t. Ax = b, x >= 0.
struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded } status;
    double objective = 0.0;
    Vector x;
};

/// Dense two-phase tableau simplex with Bland's anti-cycling rule. Intended
/// as an independent reference for small instances (up to a few hundred
/// variables), not as a fast solver.
LpResult solve_lp(const Eigen::MatrixXd& A, const Vector& b, const Vector& c);

/// Reference worst case of one (state, action) pair:
/// min p'z over the weighted-L1 ball of radius kappa intersected with the
/// simplex. Returns the objective and the attaining p.
struct WorstCaseLp {
    double value;
    Vector p;
};
WorstCaseLp lp_worst_case(const Vector& z, const Vector& pbar, const Vector& w,
                          double kappa);

/// Reference minimum budget for nature to push one pair's value down to u;
/// +infinity when u is unreachable.
double lp_inverse_budget(const Vector& z, const Vector& pbar, const Vector& w,
                         double u);

/// Reference state value of the shared-budget optimality operator, solved as
/// one joint linear program over the action distribution and the dual of
/// nature's inner problem.
double lp_s_bellman(const std::vector<Vector>& z,
                    const std::vector<Vector>& pbar, const Vector& w,
                    double kappa);

/// Reference worst-case value of a fixed action distribution under a shared
/// budget, solved as nature's primal linear program.
double lp_s_policy_update(const std::vector<Vector>& z,
                          const std::vector<Vector>& pbar, const Vector& w,
                          const Vector& d, double kappa);

} // namespace rsolve
