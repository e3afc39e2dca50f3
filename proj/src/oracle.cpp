// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#include "rsolve/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rsolve {

namespace {

// Both inner problems commute with the affine map z -> (z - lo) / s, and the
// tableau stays far better conditioned when z (often a discounted value
// estimate orders of magnitude above the unit-scale constraint coefficients)
// is brought to [0, 1] first.
struct ZScale {
    double lo = 0.0, s = 1.0;
    double fwd(double v) const { return (v - lo) / s; }
    double back(double v) const { return v * s + lo; }
};

ZScale z_scale(const std::vector<Vector>& z) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const Vector& za : z) {
        if (za.size() == 0) continue;
        lo = std::min(lo, za.minCoeff());
        hi = std::max(hi, za.maxCoeff());
    }
    if (!std::isfinite(lo)) return {};
    double s = hi - lo;
    return {lo, s > 1e-12 ? s : 1.0};
}

ZScale z_scale(const Vector& z) { return z_scale(std::vector<Vector>{z}); }

} // namespace

WorstCaseLp lp_worst_case(const Vector& z, const Vector& pbar, const Vector& w,
                          double kappa) {
    const int n = static_cast<int>(z.size());
    const ZScale zs = z_scale(z);
    // variables: p (n), dpos (n), dneg (n), slack (1)
    const int nv = 3 * n + 1;
    const int m = n + 2;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, nv);
    Vector b = Vector::Zero(m);
    Vector c = Vector::Zero(nv);
    for (int i = 0; i < n; ++i) {
        A(i, i) = 1.0;
        A(i, n + i) = -1.0;
        A(i, 2 * n + i) = 1.0;
        b[i] = pbar[i];
        A(n, i) = 1.0;
        A(n + 1, n + i) = w[i];
        A(n + 1, 2 * n + i) = w[i];
        c[i] = zs.fwd(z[i]);
    }
    b[n] = 1.0;
    A(n + 1, 3 * n) = 1.0;
    b[n + 1] = kappa;
    LpResult r = solve_lp(A, b, c);
    if (r.status != LpResult::Status::Optimal)
        throw NumericalFailure("worst-case reference LP failed");
    return {zs.back(r.objective), r.x.head(n)};
}

double lp_inverse_budget(const Vector& z, const Vector& pbar, const Vector& w,
                         double u) {
    const int n = static_cast<int>(z.size());
    const ZScale zs = z_scale(z);
    // variables: p (n), dpos (n), dneg (n), slack of p'z <= u (1)
    const int nv = 3 * n + 1;
    const int m = n + 2;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, nv);
    Vector b = Vector::Zero(m);
    Vector c = Vector::Zero(nv);
    for (int i = 0; i < n; ++i) {
        A(i, i) = 1.0;
        A(i, n + i) = -1.0;
        A(i, 2 * n + i) = 1.0;
        b[i] = pbar[i];
        A(n, i) = 1.0;
        A(n + 1, i) = zs.fwd(z[i]);
        c[n + i] = w[i];
        c[2 * n + i] = w[i];
    }
    b[n] = 1.0;
    A(n + 1, 3 * n) = 1.0;
    b[n + 1] = zs.fwd(u);
    LpResult r = solve_lp(A, b, c);
    if (r.status == LpResult::Status::Infeasible)
        return std::numeric_limits<double>::infinity();
    if (r.status != LpResult::Status::Optimal)
        throw NumericalFailure("budget reference LP failed");
    return r.objective;
}

double lp_s_bellman(const std::vector<Vector>& z,
                    const std::vector<Vector>& pbar, const Vector& w,
                    double kappa) {
    const int na = static_cast<int>(z.size());
    const ZScale zs = z_scale(z);
    std::vector<int> off(na);
    int tot = 0;
    for (int a = 0; a < na; ++a) {
        off[a] = tot;
        tot += static_cast<int>(z[a].size());
    }
    // The action distribution is optimized jointly with the dual of nature's
    // inner problem. Variables: d (na), xp/xn split of the free per-action
    // value multiplier (na each), lambda (1), yp (tot), yn (tot), slacks of
    // the two inequality families (tot each).
    const int v_d = 0, v_xp = na, v_xn = 2 * na, v_l = 3 * na;
    const int v_yp = v_l + 1, v_yn = v_yp + tot, v_s1 = v_yn + tot,
              v_s2 = v_s1 + tot;
    const int nv = v_s2 + tot;
    const int m = 2 * tot + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, nv);
    Vector b = Vector::Zero(m);
    Vector c = Vector::Zero(nv);
    for (int a = 0; a < na; ++a) {
        const int n = static_cast<int>(z[a].size());
        for (int i = 0; i < n; ++i) {
            int k = off[a] + i;
            // x_a - yp + yn - z d_a <= 0
            A(k, v_xp + a) = 1.0;
            A(k, v_xn + a) = -1.0;
            A(k, v_yp + k) = -1.0;
            A(k, v_yn + k) = 1.0;
            A(k, v_d + a) = -zs.fwd(z[a][i]);
            A(k, v_s1 + k) = 1.0;
            // yp + yn - lambda w <= 0
            A(tot + k, v_yp + k) = 1.0;
            A(tot + k, v_yn + k) = 1.0;
            A(tot + k, v_l) = -w[i];
            A(tot + k, v_s2 + k) = 1.0;
            // maximize sum_a x_a + sum pbar (yn - yp) - kappa lambda
            c[v_yp + k] = pbar[a][i];
            c[v_yn + k] = -pbar[a][i];
        }
        A(2 * tot, v_d + a) = 1.0;
        c[v_xp + a] = -1.0;
        c[v_xn + a] = 1.0;
    }
    b[2 * tot] = 1.0;
    c[v_l] = kappa;
    LpResult r = solve_lp(A, b, c);
    if (r.status != LpResult::Status::Optimal)
        throw NumericalFailure("shared-budget reference LP failed");
    return zs.back(-r.objective);
}

double lp_s_policy_update(const std::vector<Vector>& z,
                          const std::vector<Vector>& pbar, const Vector& w,
                          const Vector& d, double kappa) {
    const int na = static_cast<int>(z.size());
    const ZScale zs = z_scale(z);
    std::vector<int> off(na);
    int tot = 0;
    for (int a = 0; a < na; ++a) {
        off[a] = tot;
        tot += static_cast<int>(z[a].size());
    }
    // variables: p (tot), dpos (tot), dneg (tot), budget slack (1)
    const int nv = 3 * tot + 1;
    const int m = tot + na + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, nv);
    Vector b = Vector::Zero(m);
    Vector c = Vector::Zero(nv);
    for (int a = 0; a < na; ++a) {
        const int n = static_cast<int>(z[a].size());
        for (int i = 0; i < n; ++i) {
            int k = off[a] + i;
            A(k, k) = 1.0;
            A(k, tot + k) = -1.0;
            A(k, 2 * tot + k) = 1.0;
            b[k] = pbar[a][i];
            A(tot + a, k) = 1.0;
            A(tot + na, tot + k) = w[i];
            A(tot + na, 2 * tot + k) = w[i];
            c[k] = d[a] * zs.fwd(z[a][i]);
        }
        b[tot + a] = 1.0;
    }
    A(tot + na, 3 * tot) = 1.0;
    b[tot + na] = kappa;
    LpResult r = solve_lp(A, b, c);
    if (r.status != LpResult::Status::Optimal)
        throw NumericalFailure("fixed-policy reference LP failed");
    return zs.back(r.objective);
}

} // namespace rsolve
