// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#include "rsolve/operators.hpp"

#include <numeric>

namespace rsolve {

PairProblem pair_problem(const Rmdp& model, const AmbiguityConfig& amb,
                         const Vector& v, int s, int a) {
    const SparseRow& row = model.actions[s][a];
    const Vector& w_full = amb.weight_for(s, a);
    PairProblem pp;
    if (amb.support_restricted) {
        const int n = static_cast<int>(row.size());
        pp.z.resize(n);
        pp.r.resize(n);
        pp.pbar.resize(n);
        pp.w.resize(n);
        pp.support = row.index;
        for (int k = 0; k < n; ++k) {
            pp.r[k] = row.reward[k];
            pp.z[k] = row.reward[k] + model.discount * v[row.index[k]];
            pp.pbar[k] = row.prob[k];
            pp.w[k] = w_full[row.index[k]];
        }
    } else {
        const int n = model.n_states;
        pp.r = Vector::Zero(n);
        pp.pbar = Vector::Zero(n);
        pp.w = w_full;
        pp.support.resize(n);
        std::iota(pp.support.begin(), pp.support.end(), 0);
        for (size_t k = 0; k < row.size(); ++k) {
            pp.r[row.index[k]] = row.reward[k];
            pp.pbar[row.index[k]] = row.prob[k];
        }
        pp.z = pp.r + model.discount * v;
    }
    return pp;
}

std::vector<ResponseFunction> state_responses(const Rmdp& model,
                                              const AmbiguityConfig& amb,
                                              const Vector& v, int s) {
    std::vector<ResponseFunction> fs;
    fs.reserve(model.action_count(s));
    for (int a = 0; a < model.action_count(s); ++a) {
        PairProblem pp = pair_problem(model, amb, v, s, a);
        fs.push_back(homotopy_response(pp.z, pp.pbar, pp.w));
    }
    return fs;
}

BellmanResult robust_bellman(const Rmdp& model, const AmbiguityConfig& amb,
                             const Vector& v, bool exact, double eps) {
    BellmanResult res;
    res.value.resize(model.n_states);
    res.policy.action_dist.resize(model.n_states);
#pragma omp parallel for schedule(dynamic, 8)
    for (int s = 0; s < model.n_states; ++s) {
        const int na = model.action_count(s);
        if (amb.kind == Rectangularity::SA) {
            Vector dist = Vector::Zero(na);
            double best = -std::numeric_limits<double>::infinity();
            int best_a = 0;
            for (int a = 0; a < na; ++a) {
                PairProblem pp = pair_problem(model, amb, v, s, a);
                double q = sa_worst_case(pp.z, pp.pbar, pp.w, amb.budget(s, a)).q;
                if (q > best) {
                    best = q;
                    best_a = a;
                }
            }
            dist[best_a] = 1.0;
            res.value[s] = best;
            res.policy.action_dist[s] = dist;
        } else {
            auto fs = state_responses(model, amb, v, s);
            SBellmanResult sb = s_bellman(fs, amb.budget(s), exact, eps);
            res.value[s] = sb.u;
            res.policy.action_dist[s] = sb.d;
        }
    }
    return res;
}

Vector robust_policy_update(const Rmdp& model, const AmbiguityConfig& amb,
                            const Policy& policy, const Vector& v) {
    Vector out(model.n_states);
#pragma omp parallel for schedule(dynamic, 8)
    for (int s = 0; s < model.n_states; ++s) {
        const Vector& d = policy.action_dist[s];
        if (amb.kind == Rectangularity::SA) {
            double val = 0.0;
            for (int a = 0; a < model.action_count(s); ++a) {
                if (d[a] == 0.0) continue;
                PairProblem pp = pair_problem(model, amb, v, s, a);
                val += d[a] *
                       sa_worst_case(pp.z, pp.pbar, pp.w, amb.budget(s, a)).q;
            }
            out[s] = val;
        } else {
            auto fs = state_responses(model, amb, v, s);
            out[s] = s_bellman_policy(fs, d, amb.budget(s)).value;
        }
    }
    return out;
}

} // namespace rsolve
