// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License
//
// Permission is hereby granted, free of charge, to any person obtaining a copy
// of this software and associated documentation files (the "Software"), to deal
// in the Software without restriction, including without limitation the rights
// to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
// copies of the Software, and to permit persons to whom the Software is
// furnished to do so, subject to the following conditions:
//
// The above copyright notice and this permission notice shall be included in
// all copies or substantial portions of the Software.
//
// THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
// IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
// FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
// AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
// LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
// OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
// SOFTWARE.

#pragma once

#include <Eigen/Dense>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rsolve {

using Vector = Eigen::VectorXd;

/// Base class of all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MissingColumn : Error {
    explicit MissingColumn(const std::string& col)
        : Error("missing CSV column: " + col) {}
};
struct NonStochasticRow : Error {
    long state, action;
    double residual;
    NonStochasticRow(long s, long a, double r)
        : Error("transition row (" + std::to_string(s) + "," + std::to_string(a) +
                ") sums to 1 + " + std::to_string(r)),
          state(s), action(a), residual(r) {}
};
struct NegativeProbability : Error {
    using Error::Error;
};
struct BadDiscount : Error {
    using Error::Error;
};
struct BadCapacity : Error {
    using Error::Error;
};
struct NegativeBudget : Error {
    using Error::Error;
};
struct BadBracket : Error {
    using Error::Error;
};
struct DegenerateSupport : Error {
    using Error::Error;
};
struct UnsupportedRectangularity : Error {
    using Error::Error;
};
struct NumericalFailure : Error {
    using Error::Error;
};

/// Sparse transition row of a single (state, action) pair. Parallel arrays of
/// target state, probability, and reward, sorted by target state.
struct SparseRow {
    std::vector<int> index;
    std::vector<double> prob;
    std::vector<double> reward;

    size_t size() const { return index.size(); }
};

/// MDP with per-state action sets stored as a ragged array of sparse rows.
/// Immutable after construction/validation; safe to share across threads.
struct Rmdp {
    int n_states = 0;
    std::vector<std::vector<SparseRow>> actions; // [state][action]
    double discount = 0.9;
    Vector initial_dist; // empty means uniform

    int action_count(int s) const { return static_cast<int>(actions[s].size()); }
    long state_action_pairs() const;

    /// Throws if any structural invariant fails. Rows whose sum deviates from
    /// one by less than 1e-9 are renormalized in place.
    void validate();
};

enum class Rectangularity { SA, S };

/// Weighted-L1 ambiguity description: rectangularity kind, budgets, and next
/// state weights. The default is a single weight vector shared by all (s,a)
/// pairs; sparse per-(s,a) overrides are kept in a map.
struct AmbiguityConfig {
    Rectangularity kind = Rectangularity::SA;
    double budget_default = 0.0;
    std::vector<std::vector<double>> budgets_sa; // optional ragged override
    std::vector<double> budgets_s;               // optional per-state override
    Vector weights;                              // length S; empty = uniform
    std::map<std::pair<int, int>, Vector> weight_overrides;
    bool support_restricted = false;

    double budget(int s, int a) const {
        if (!budgets_sa.empty()) return budgets_sa[s][a];
        return budget_default;
    }
    double budget(int s) const {
        if (!budgets_s.empty()) return budgets_s[s];
        return budget_default;
    }
    /// Weight vector over next states for the pair (s,a). The returned
    /// reference stays valid as long as the config is alive.
    const Vector& weight_for(int s, int a) const;

    void validate(const Rmdp& model) const;

    /// Fills the shared weight vector with ones of the given length if empty.
    void ensure_weights(int n_states);
};

/// Randomized stationary policy: one distribution over actions per state.
struct Policy {
    std::vector<Vector> action_dist;

    static Policy deterministic(const std::vector<int>& greedy,
                                const Rmdp& model);
    bool empty() const { return action_dist.empty(); }
    void validate(const Rmdp& model) const;
};

/// (Lv)_s = max_a pbar_{s,a}' (r_{s,a} + gamma v); greedy ties break toward
/// the smallest action id.
std::pair<Vector, Policy> nominal_bellman(const Rmdp& model, const Vector& v);

/// Nominal policy update: one application of L_pi with kappa = 0.
Vector nominal_policy_update(const Rmdp& model, const Policy& policy,
                             const Vector& v);

/// Exact nominal policy value: solves (I - gamma P(pi)) v = r(pi) densely.
Vector nominal_policy_value(const Rmdp& model, const Policy& policy);

} // namespace rsolve
