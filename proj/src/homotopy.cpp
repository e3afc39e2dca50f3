// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#include "rsolve/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rsolve {

namespace {
constexpr double kFeasTol = 1e-13;
}

std::vector<int> nondominated_receivers(const Vector& z, const Vector& w) {
    std::vector<int> order(z.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (z[a] != z[b]) return z[a] < z[b];
        if (w[a] != w[b]) return w[a] < w[b];
        return a < b;
    });
    std::vector<int> kept;
    double min_w = std::numeric_limits<double>::infinity();
    for (int i : order) {
        if (w[i] < min_w) {
            kept.push_back(i);
            min_w = w[i];
        }
    }
    return kept;
}

ResponseFunction homotopy_response(const Vector& z, const Vector& pbar,
                                   const Vector& w, double xi_cap, bool prune) {
    const int n = static_cast<int>(z.size());
    if (n == 0) throw DegenerateSupport("empty support");

    std::vector<int> receivers;
    if (prune) {
        receivers = nondominated_receivers(z, w);
    } else {
        receivers.resize(n);
        std::iota(receivers.begin(), receivers.end(), 0);
    }

    // Candidate bases: mass moves from a higher-value donor j to a lower-value
    // receiver i. Type 1 pushes the donor below its nominal probability (both
    // deviations grow); type 2 drains excess above nominal from the donor (its
    // deviation shrinks) and requires the receiver to carry the larger weight.
    struct Cand {
        double slope;
        int recv, donor;
        double mass_rate;
        bool below_nominal; // type 1
    };
    std::vector<Cand> cands;
    cands.reserve(2 * receivers.size() * n);
    for (int i : receivers) {
        for (int j = 0; j < n; ++j) {
            if (z[j] <= z[i]) continue;
            cands.push_back({(z[i] - z[j]) / (w[i] + w[j]), i, j,
                             1.0 / (w[i] + w[j]), true});
            if (w[i] > w[j])
                cands.push_back({(z[i] - z[j]) / (w[i] - w[j]), i, j,
                                 1.0 / (w[i] - w[j]), false});
        }
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand& a, const Cand& b) { return a.slope < b.slope; });

    ResponseFunction f;
    f.pbar = pbar;
    Vector p = pbar;
    double xi = 0.0;
    double q = pbar.dot(z);
    f.xi.push_back(0.0);
    f.q.push_back(q);

    for (const Cand& c : cands) {
        if (xi >= xi_cap) break;
        double dmass;
        if (c.below_nominal) {
            if (p[c.donor] <= kFeasTol || p[c.donor] > pbar[c.donor] + kFeasTol)
                continue;
            dmass = p[c.donor];
        } else {
            dmass = p[c.donor] - pbar[c.donor];
            if (dmass <= kFeasTol) continue;
        }
        double dxi = dmass / c.mass_rate;
        if (xi + dxi > xi_cap) {
            dxi = xi_cap - xi;
            dmass = dxi * c.mass_rate;
        }
        if (dxi <= 0.0) continue;
        p[c.donor] -= dmass;
        p[c.recv] += dmass;
        xi += dxi;
        q += c.slope * dxi;
        f.xi.push_back(xi);
        f.q.push_back(q);
        f.segments.push_back({c.donor, c.recv, c.mass_rate, c.slope});
    }
    return f;
}

namespace {

// Index of the segment containing xi, i.e. largest k with f.xi[k] <= xi.
size_t locate(const ResponseFunction& f, double xi) {
    auto it = std::upper_bound(f.xi.begin(), f.xi.end(), xi);
    return static_cast<size_t>(it - f.xi.begin()) - 1;
}

} // namespace

double response_value(const ResponseFunction& f, double xi) {
    if (xi < 0.0) throw BadBracket("negative budget");
    if (xi >= f.xi.back()) return f.q.back();
    size_t k = locate(f, xi);
    return f.q[k] + f.segments[k].slope * (xi - f.xi[k]);
}

ResponseEval eval_response(const ResponseFunction& f, double xi) {
    if (xi < 0.0) throw BadBracket("negative budget");
    Vector p = f.pbar;
    double q = f.q[0];
    for (size_t k = 0; k < f.segments.size(); ++k) {
        double seg = std::min(xi, f.xi[k + 1]) - f.xi[k];
        if (seg <= 0.0) break;
        const Segment& s = f.segments[k];
        double dmass = seg * s.mass_rate;
        p[s.donor] -= dmass;
        p[s.receiver] += dmass;
        q += s.slope * seg;
    }
    // guard against accumulated rounding
    for (int i = 0; i < p.size(); ++i)
        if (p[i] < 0.0) p[i] = 0.0;
    return {q, p};
}

double inverse_response(const ResponseFunction& f, double u, double tol) {
    if (u >= f.q.front()) return 0.0;
    if (u < f.q.back()) {
        if (u >= f.q.back() - tol) return f.xi.back();
        return std::numeric_limits<double>::infinity();
    }
    // find segment with q[k] >= u >= q[k+1]
    auto it = std::lower_bound(f.q.begin(), f.q.end(), u, std::greater<>());
    size_t k = static_cast<size_t>(it - f.q.begin());
    // q[k] is the first value <= u, so the crossing is in segment k-1
    if (k == 0) return 0.0;
    --k;
    if (f.segments[k].slope == 0.0) return f.xi[k];
    return f.xi[k] + (u - f.q[k]) / f.segments[k].slope;
}

std::pair<double, double> subgradient(const ResponseFunction& f, double xi) {
    if (xi < 0.0) throw BadBracket("negative budget");
    const double inf = std::numeric_limits<double>::infinity();
    if (f.segments.empty()) return {xi == 0.0 ? -inf : 0.0, 0.0};
    if (xi == 0.0) return {-inf, f.segments.front().slope};
    if (xi >= f.xi.back()) return {xi == f.xi.back() ? f.segments.back().slope : 0.0, 0.0};
    size_t k = locate(f, xi);
    double left = (xi == f.xi[k] && k > 0) ? f.segments[k - 1].slope
                                           : f.segments[k].slope;
    return {left, f.segments[k].slope};
}

ResponseEval sa_worst_case(const Vector& z, const Vector& pbar, const Vector& w,
                           double kappa) {
    if (kappa < 0.0) throw NegativeBudget("budget must be nonnegative");
    ResponseFunction f = homotopy_response(z, pbar, w, kappa);
    return eval_response(f, kappa);
}

} // namespace rsolve
