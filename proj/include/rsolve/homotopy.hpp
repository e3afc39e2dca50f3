// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#pragma once

#include "rsolve/types.hpp"

#include <limits>

namespace rsolve {

/// One linear piece of the parametric worst-case response. Between two
/// consecutive breakpoints, probability mass flows from `donor` to `receiver`
/// at `mass_rate` units of mass per unit of budget, and the objective falls
/// at rate `slope` (always nonpositive).
struct Segment {
    int donor = -1;
    int receiver = -1;
    double mass_rate = 0.0;
    double slope = 0.0;
};

/// Piecewise linear, convex, nonincreasing map from the weighted-L1 budget
/// to the worst-case expected value min { p'z : p in simplex,
/// ||p - pbar||_{1,w} <= xi }. Breakpoints xi are strictly increasing and the
/// segment slopes are nondecreasing. xi[0] == 0 and q[0] == pbar'z.
struct ResponseFunction {
    std::vector<double> xi;
    std::vector<double> q;
    std::vector<Segment> segments; // segments.size() == xi.size() - 1
    Vector pbar;

    size_t breakpoints() const { return xi.size(); }
    double max_budget() const { return xi.back(); }
    double min_value() const { return q.back(); }
};

/// Indices that can receive mass in an optimal response, computed by a sort
/// on (value ascending, weight ascending) keeping only indices whose weight
/// is strictly below every weight kept so far. At most one index per distinct
/// weight survives.
std::vector<int> nondominated_receivers(const Vector& z, const Vector& w);

/// Traces the full worst-case response by pivoting through donor/receiver
/// bases in order of increasing slope. Stops early once the budget reaches
/// `xi_cap`. With `prune` false every index is considered as a receiver,
/// which is slower but must produce the same function values.
ResponseFunction homotopy_response(
    const Vector& z, const Vector& pbar, const Vector& w,
    double xi_cap = std::numeric_limits<double>::infinity(),
    bool prune = true);

/// Function value and the attaining distribution at a given budget. Budgets
/// beyond the last breakpoint return the final value and distribution.
struct ResponseEval {
    double q;
    Vector p;
};
ResponseEval eval_response(const ResponseFunction& f, double xi);

/// Function value only (no distribution reconstruction).
double response_value(const ResponseFunction& f, double xi);

/// Smallest budget xi with q(xi) <= u. Returns 0 when u >= q(0) and +inf when
/// u is more than `tol` below the final value; values within `tol` of the
/// final value clamp to the last breakpoint.
double inverse_response(const ResponseFunction& f, double u, double tol = 0.0);

/// Left and right derivatives at a budget. The right derivative past the last
/// breakpoint is 0; the left derivative at 0 is -infinity.
std::pair<double, double> subgradient(const ResponseFunction& f, double xi);

/// Worst-case value and distribution for one (s,a) pair: assembles the
/// response up to the budget and evaluates it there.
ResponseEval sa_worst_case(const Vector& z, const Vector& pbar,
                           const Vector& w, double kappa);

} // namespace rsolve
