// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#include "rsolve/types.hpp"

#include <cmath>

namespace rsolve {

long Rmdp::state_action_pairs() const {
    long n = 0;
    for (const auto& as : actions) n += static_cast<long>(as.size());
    return n;
}

void Rmdp::validate() {
    if (discount <= 0.0 || discount >= 1.0)
        throw BadDiscount("discount must lie in (0,1), got " +
                          std::to_string(discount));
    if (n_states <= 0 || static_cast<int>(actions.size()) != n_states)
        throw Error("state count does not match action table");
    for (int s = 0; s < n_states; ++s) {
        if (actions[s].empty())
            throw Error("state " + std::to_string(s) + " has no actions");
        for (size_t a = 0; a < actions[s].size(); ++a) {
            SparseRow& row = actions[s][a];
            if (row.index.empty())
                throw Error("empty transition row at (" + std::to_string(s) +
                            "," + std::to_string(a) + ")");
            double sum = 0.0;
            for (size_t k = 0; k < row.index.size(); ++k) {
                if (row.index[k] < 0 || row.index[k] >= n_states)
                    throw Error("transition target out of range");
                if (row.prob[k] < 0.0)
                    throw NegativeProbability(
                        "negative probability at (" + std::to_string(s) + "," +
                        std::to_string(a) + ")");
                sum += row.prob[k];
            }
            double dev = sum - 1.0;
            if (std::abs(dev) > 1e-9)
                throw NonStochasticRow(s, static_cast<long>(a), dev);
            if (dev != 0.0)
                for (double& p : row.prob) p /= sum;
        }
    }
    if (initial_dist.size() != 0) {
        if (initial_dist.size() != n_states ||
            std::abs(initial_dist.sum() - 1.0) > 1e-9 ||
            initial_dist.minCoeff() < 0.0)
            throw Error("initial distribution is not a distribution over states");
    }
}

const Vector& AmbiguityConfig::weight_for(int s, int a) const {
    if (!weight_overrides.empty()) {
        auto it = weight_overrides.find({s, a});
        if (it != weight_overrides.end()) return it->second;
    }
    return weights;
}

void AmbiguityConfig::ensure_weights(int n_states) {
    if (weights.size() == 0) weights = Vector::Ones(n_states);
}

void AmbiguityConfig::validate(const Rmdp& model) const {
    if (budget_default < 0.0)
        throw NegativeBudget("default budget must be nonnegative");
    for (const auto& bs : budgets_sa)
        for (double b : bs)
            if (b < 0.0) throw NegativeBudget("per-pair budget must be nonnegative");
    for (double b : budgets_s)
        if (b < 0.0) throw NegativeBudget("per-state budget must be nonnegative");
    if (!budgets_sa.empty()) {
        if (static_cast<int>(budgets_sa.size()) != model.n_states)
            throw Error("budget table does not match state count");
        for (int s = 0; s < model.n_states; ++s)
            if (static_cast<int>(budgets_sa[s].size()) != model.action_count(s))
                throw Error("budget table does not match action count");
    }
    if (!budgets_s.empty() &&
        static_cast<int>(budgets_s.size()) != model.n_states)
        throw Error("per-state budget table does not match state count");
    auto check_w = [&](const Vector& w) {
        if (w.size() != model.n_states)
            throw Error("weight vector length does not match state count");
        if (w.minCoeff() <= 0.0)
            throw Error("weights must be strictly positive");
    };
    if (weights.size() != 0) check_w(weights);
    for (const auto& [key, w] : weight_overrides) check_w(w);
}

Policy Policy::deterministic(const std::vector<int>& greedy, const Rmdp& model) {
    Policy pi;
    pi.action_dist.resize(model.n_states);
    for (int s = 0; s < model.n_states; ++s) {
        pi.action_dist[s] = Vector::Zero(model.action_count(s));
        pi.action_dist[s][greedy[s]] = 1.0;
    }
    return pi;
}

void Policy::validate(const Rmdp& model) const {
    if (static_cast<int>(action_dist.size()) != model.n_states)
        throw Error("policy does not match state count");
    for (int s = 0; s < model.n_states; ++s) {
        if (action_dist[s].size() != model.action_count(s))
            throw Error("policy row does not match action count");
        if (std::abs(action_dist[s].sum() - 1.0) > 1e-9 ||
            action_dist[s].minCoeff() < -1e-12)
            throw Error("policy row is not a distribution");
    }
}

std::pair<Vector, Policy> nominal_bellman(const Rmdp& model, const Vector& v) {
    Vector out(model.n_states);
    std::vector<int> greedy(model.n_states, 0);
    for (int s = 0; s < model.n_states; ++s) {
        double best = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < model.action_count(s); ++a) {
            const SparseRow& row = model.actions[s][a];
            double q = 0.0;
            for (size_t k = 0; k < row.size(); ++k)
                q += row.prob[k] * (row.reward[k] + model.discount * v[row.index[k]]);
            if (q > best) {
                best = q;
                greedy[s] = a;
            }
        }
        out[s] = best;
    }
    return {out, Policy::deterministic(greedy, model)};
}

Vector nominal_policy_update(const Rmdp& model, const Policy& policy,
                             const Vector& v) {
    Vector out = Vector::Zero(model.n_states);
    for (int s = 0; s < model.n_states; ++s) {
        for (int a = 0; a < model.action_count(s); ++a) {
            double w = policy.action_dist[s][a];
            if (w == 0.0) continue;
            const SparseRow& row = model.actions[s][a];
            double q = 0.0;
            for (size_t k = 0; k < row.size(); ++k)
                q += row.prob[k] * (row.reward[k] + model.discount * v[row.index[k]]);
            out[s] += w * q;
        }
    }
    return out;
}

Vector nominal_policy_value(const Rmdp& model, const Policy& policy) {
    const int n = model.n_states;
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
    Vector b = Vector::Zero(n);
    for (int s = 0; s < n; ++s) {
        for (int a = 0; a < model.action_count(s); ++a) {
            double w = policy.action_dist[s][a];
            if (w == 0.0) continue;
            const SparseRow& row = model.actions[s][a];
            for (size_t k = 0; k < row.size(); ++k) {
                A(s, row.index[k]) -= model.discount * w * row.prob[k];
                b[s] += w * row.prob[k] * row.reward[k];
            }
        }
    }
    return A.partialPivLu().solve(b);
}

} // namespace rsolve
