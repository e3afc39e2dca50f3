// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#include "rsolve/bisection.hpp"

#include <algorithm>
#include <cmath>

namespace rsolve {

namespace {
constexpr double kActiveTol = 1e-9;
}

double total_budget_needed(const std::vector<ResponseFunction>& fs, double u,
                           double tol) {
    double total = 0.0;
    for (const auto& f : fs) {
        double xi = inverse_response(f, u, tol);
        if (std::isinf(xi)) return xi;
        total += xi;
    }
    return total;
}

double bisect_eps(const std::vector<ResponseFunction>& fs, double kappa,
                  double eps) {
    if (fs.empty()) throw DegenerateSupport("no actions");
    if (kappa < 0.0) throw NegativeBudget("budget must be nonnegative");
    double u_max = -std::numeric_limits<double>::infinity();
    double u_min = -std::numeric_limits<double>::infinity();
    for (const auto& f : fs) {
        u_max = std::max(u_max, f.q.front());
        u_min = std::max(u_min, f.min_value());
    }
    if (total_budget_needed(fs, u_min) <= kappa) return u_min;
    while (u_max - u_min > 2.0 * eps) {
        double mid = 0.5 * (u_min + u_max);
        if (total_budget_needed(fs, mid) <= kappa)
            u_max = mid;
        else
            u_min = mid;
    }
    return 0.5 * (u_min + u_max);
}

double bisect_exact(const std::vector<ResponseFunction>& fs, double kappa) {
    if (fs.empty()) throw DegenerateSupport("no actions");
    if (kappa < 0.0) throw NegativeBudget("budget must be nonnegative");
    std::vector<double> cand;
    for (const auto& f : fs)
        cand.insert(cand.end(), f.q.begin(), f.q.end());
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    if (total_budget_needed(fs, cand.front()) <= kappa) return cand.front();
    // invariant: needed(cand[lo]) > kappa >= needed(cand[hi])
    size_t lo = 0, hi = cand.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (total_budget_needed(fs, cand[mid]) <= kappa)
            hi = mid;
        else
            lo = mid;
    }
    double u_lo = cand[lo], u_hi = cand[hi];
    double s_lo = total_budget_needed(fs, u_lo);
    double s_hi = total_budget_needed(fs, u_hi);
    if (std::isinf(s_lo) || s_lo == s_hi) return u_hi;
    // the budget requirement is linear in u between consecutive candidates
    double alpha = (kappa - s_lo) / (s_hi - s_lo);
    alpha = std::clamp(alpha, 0.0, 1.0);
    return (1.0 - alpha) * u_lo + alpha * u_hi;
}

SBellmanResult recover_greedy(const std::vector<ResponseFunction>& fs,
                              double kappa, double u_star) {
    const int m = static_cast<int>(fs.size());
    SBellmanResult res;
    res.u = u_star;
    res.d = Vector::Zero(m);
    res.alpha = Vector::Zero(m);
    res.xi.resize(m, 0.0);
    res.worst_p.resize(m);

    std::vector<bool> active(m, false);
    int closest = 0;
    double closest_gap = std::numeric_limits<double>::infinity();
    for (int a = 0; a < m; ++a) {
        double xi = inverse_response(fs[a], u_star, kActiveTol);
        if (std::isinf(xi)) xi = fs[a].max_budget();
        res.xi[a] = xi;
        double gap = std::abs(response_value(fs[a], xi) - u_star);
        if (gap <= kActiveTol) active[a] = true;
        if (gap < closest_gap) {
            closest_gap = gap;
            closest = a;
        }
    }
    if (std::none_of(active.begin(), active.end(), [](bool b) { return b; }))
        active[closest] = true;

    // saturated active action: nature gains nothing from extra budget there,
    // so playing it alone is optimal
    for (int a = 0; a < m; ++a) {
        if (!active[a]) continue;
        if (u_star <= fs[a].min_value() + kActiveTol ||
            subgradient(fs[a], res.xi[a]).second == 0.0) {
            res.d[a] = 1.0;
            res.lambda = 0.0;
            for (int b = 0; b < m; ++b)
                res.worst_p[b] = eval_response(fs[b], res.xi[b]).p;
            return res;
        }
    }

    double e_sum = 0.0;
    Vector e = Vector::Zero(m);
    for (int a = 0; a < m; ++a) {
        if (!active[a]) continue;
        double slope = subgradient(fs[a], res.xi[a]).second;
        e[a] = -1.0 / slope;
        e_sum += e[a];
    }
    res.lambda = 1.0 / e_sum;
    for (int a = 0; a < m; ++a) {
        if (active[a])
            res.d[a] = e[a] / e_sum;
        else
            res.alpha[a] = res.lambda;
        res.worst_p[a] = eval_response(fs[a], res.xi[a]).p;
    }
    return res;
}

SBellmanResult s_bellman(const std::vector<ResponseFunction>& fs, double kappa,
                         bool exact, double eps) {
    double u = exact ? bisect_exact(fs, kappa) : bisect_eps(fs, kappa, eps);
    return recover_greedy(fs, kappa, u);
}

SPolicyResult s_bellman_policy(const std::vector<ResponseFunction>& fs,
                               const Vector& d, double kappa) {
    if (kappa < 0.0) throw NegativeBudget("budget must be nonnegative");
    SPolicyResult res;
    res.xi.assign(fs.size(), 0.0);
    struct Item {
        double rate;
        double len;
        int action;
    };
    std::vector<Item> items;
    for (size_t a = 0; a < fs.size(); ++a) {
        res.value += d[a] * fs[a].q.front();
        if (d[a] == 0.0) continue;
        const auto& f = fs[a];
        for (size_t k = 0; k < f.segments.size(); ++k)
            items.push_back({d[a] * f.segments[k].slope,
                             f.xi[k + 1] - f.xi[k], static_cast<int>(a)});
    }
    // within each action slopes are nondecreasing, so a stable global sort
    // keeps every action's segments in order and greedy consumption is optimal
    std::stable_sort(items.begin(), items.end(),
                     [](const Item& x, const Item& y) { return x.rate < y.rate; });
    double rem = kappa;
    for (const Item& it : items) {
        if (rem <= 0.0 || it.rate >= 0.0) break;
        double t = std::min(it.len, rem);
        res.value += it.rate * t;
        res.xi[it.action] += t;
        rem -= t;
    }
    return res;
}

} // namespace rsolve
