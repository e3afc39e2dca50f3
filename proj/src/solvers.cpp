// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#include "rsolve/solvers.hpp"

#include <chrono>
#include <cmath>
#include <map>

namespace rsolve {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

FrozenResponse freeze_response(const Rmdp& model, const AmbiguityConfig& amb,
                               const Policy& policy, const Vector& v) {
    FrozenResponse fr;
    fr.index.resize(model.n_states);
    fr.prob.resize(model.n_states);
    fr.reward = Vector::Zero(model.n_states);
#pragma omp parallel for schedule(dynamic, 8)
    for (int s = 0; s < model.n_states; ++s) {
        const Vector& d = policy.action_dist[s];
        std::map<int, double> agg;
        double rew = 0.0;
        auto add = [&](const PairProblem& pp, const Vector& p, double weight) {
            for (int k = 0; k < p.size(); ++k) {
                if (p[k] == 0.0) continue;
                agg[pp.support[k]] += weight * p[k];
                rew += weight * p[k] * pp.r[k];
            }
        };
        if (amb.kind == Rectangularity::SA) {
            for (int a = 0; a < model.action_count(s); ++a) {
                if (d[a] == 0.0) continue;
                PairProblem pp = pair_problem(model, amb, v, s, a);
                auto ev = sa_worst_case(pp.z, pp.pbar, pp.w, amb.budget(s, a));
                add(pp, ev.p, d[a]);
            }
        } else {
            std::vector<PairProblem> pps;
            std::vector<ResponseFunction> fs;
            for (int a = 0; a < model.action_count(s); ++a) {
                pps.push_back(pair_problem(model, amb, v, s, a));
                fs.push_back(homotopy_response(pps[a].z, pps[a].pbar, pps[a].w));
            }
            auto split = s_bellman_policy(fs, d, amb.budget(s));
            for (int a = 0; a < model.action_count(s); ++a) {
                if (d[a] == 0.0) continue;
                add(pps[a], eval_response(fs[a], split.xi[a]).p, d[a]);
            }
        }
        fr.reward[s] = rew;
        fr.index[s].reserve(agg.size());
        fr.prob[s].resize(agg.size());
        int k = 0;
        for (const auto& [idx, p] : agg) {
            fr.index[s].push_back(idx);
            fr.prob[s][k++] = p;
        }
    }
    return fr;
}

Vector apply_frozen(const FrozenResponse& fr, double discount,
                    const Vector& v) {
    Vector out = fr.reward;
    for (size_t s = 0; s < fr.index.size(); ++s)
        for (size_t k = 0; k < fr.index[s].size(); ++k)
            out[s] += discount * fr.prob[s][k] * v[fr.index[s][k]];
    return out;
}

Vector evaluate_policy(const Rmdp& model, const AmbiguityConfig& amb,
                       const Policy& policy, double residual_tol,
                       EvalMethod method, int mpi_sweeps, const Vector* v0) {
    Vector v = v0 ? *v0 : Vector::Zero(model.n_states);
    if (method == EvalMethod::Auto)
        method = model.n_states <= 1000 ? EvalMethod::DensePolicyIteration
                                        : EvalMethod::ModifiedPolicyIteration;
    const int n = model.n_states;
    if (method == EvalMethod::DensePolicyIteration) {
        for (int it = 0; it < 500; ++it) {
            FrozenResponse fr = freeze_response(model, amb, policy, v);
            Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
            for (int s = 0; s < n; ++s)
                for (size_t k = 0; k < fr.index[s].size(); ++k)
                    A(s, fr.index[s][k]) -= model.discount * fr.prob[s][k];
            v = A.partialPivLu().solve(fr.reward);
            double res = sup_norm_diff(robust_policy_update(model, amb, policy, v), v);
            if (res <= residual_tol) return v;
        }
        throw NumericalFailure("policy evaluation did not converge");
    }
    if (method == EvalMethod::ModifiedPolicyIteration) {
        for (long it = 0; it < 1000000; ++it) {
            Vector tv = robust_policy_update(model, amb, policy, v);
            if (sup_norm_diff(tv, v) <= residual_tol) return tv;
            FrozenResponse fr = freeze_response(model, amb, policy, v);
            v = tv;
            for (int k = 0; k < mpi_sweeps; ++k) {
                Vector nv = apply_frozen(fr, model.discount, v);
                double ch = sup_norm_diff(nv, v);
                v = nv;
                if (ch <= residual_tol / 10.0) break;
            }
        }
        throw NumericalFailure("policy evaluation did not converge");
    }
    // plain value iteration on the fixed-policy operator
    for (long it = 0; it < 100000000; ++it) {
        Vector tv = robust_policy_update(model, amb, policy, v);
        if (sup_norm_diff(tv, v) <= residual_tol) return tv;
        v = tv;
    }
    throw NumericalFailure("policy evaluation did not converge");
}

SolveResult ppi(const Rmdp& model, const AmbiguityConfig& amb, double delta,
                EvalMethod method, int mpi_sweeps, long max_iterations,
                const Vector* v0, bool track_values) {
    auto t0 = std::chrono::steady_clock::now();
    const double gamma = model.discount;
    const double stop = 0.5 * (1.0 - gamma) * delta;
    SolveResult res;
    Vector v = v0 ? *v0 : Vector::Zero(model.n_states);
    double eps = 1.0;
    for (long k = 0; k < max_iterations; ++k) {
        BellmanResult b = robust_bellman(model, amb, v);
        double rho = sup_norm_diff(b.value, v);
        res.iterations.push_back({rho, eps, seconds_since(t0)});
        if (rho < stop) {
            res.value = b.value;
            res.policy = b.policy;
            res.converged = true;
            return res;
        }
        v = evaluate_policy(model, amb, b.policy, (1.0 - gamma) * eps, method,
                            mpi_sweeps, &b.value);
        res.policy = b.policy;
        if (track_values) res.trace.push_back(v);
        eps = std::min(gamma * gamma * eps, 0.5 * rho / (1.0 - gamma));
    }
    res.value = v;
    return res;
}

SolveResult robust_vi(const Rmdp& model, const AmbiguityConfig& amb,
                      double residual_target, long max_iterations,
                      const Vector* v0) {
    auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    Vector v = v0 ? *v0 : Vector::Zero(model.n_states);
    for (long k = 0; k < max_iterations; ++k) {
        BellmanResult b = robust_bellman(model, amb, v);
        double rho = sup_norm_diff(b.value, v);
        v = b.value;
        res.policy = b.policy;
        res.iterations.push_back({rho, 0.0, seconds_since(t0)});
        if (rho <= residual_target) {
            res.value = v;
            res.converged = true;
            return res;
        }
    }
    res.value = v;
    return res;
}

SolveResult rmpi(const Rmdp& model, const AmbiguityConfig& amb,
                 double residual_target, long eval_sweeps, long max_iterations,
                 const Vector* v0) {
    auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    Vector v = v0 ? *v0 : Vector::Zero(model.n_states);
    for (long k = 0; k < max_iterations; ++k) {
        BellmanResult b = robust_bellman(model, amb, v);
        double rho = sup_norm_diff(b.value, v);
        res.iterations.push_back({rho, 0.0, seconds_since(t0)});
        v = b.value;
        res.policy = b.policy;
        if (rho <= residual_target) {
            res.value = v;
            res.converged = true;
            return res;
        }
        for (long m = 0; m < eval_sweeps; ++m) {
            Vector nv = robust_policy_update(model, amb, b.policy, v);
            double ch = sup_norm_diff(nv, v);
            v = nv;
            if (ch <= residual_target / 10.0) break;
        }
    }
    res.value = v;
    return res;
}

} // namespace rsolve
