// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#include "rsolve/oracle.hpp"

#include <cmath>
#include <random>

namespace rsolve {

namespace {

constexpr double kPivTol = 1e-10;
constexpr double kCostTol = 1e-9;

// Pivots the tableau (objective in the last row) on (row, col).
void pivot(Eigen::MatrixXd& T, std::vector<int>& basis, int row, int col) {
    T.row(row) /= T(row, col);
    for (int i = 0; i < T.rows(); ++i) {
        if (i == row) continue;
        double f = T(i, col);
        if (f != 0.0) T.row(i) -= f * T.row(row);
    }
    basis[row] = col;
}

// Recomputes the whole tableau from the original data through the current
// basis, discarding the numerical drift of accumulated rank-one updates.
// The constraint rows become B^{-1} [A | b] and the last row the reduced
// costs c' - c_B' B^{-1} [A | b].
void refactorize(Eigen::MatrixXd& T, const std::vector<int>& basis,
                 const Eigen::MatrixXd& A, const Vector& b,
                 const Vector& cost) {
    const int m = static_cast<int>(A.rows());
    Eigen::MatrixXd B(m, m);
    for (int i = 0; i < m; ++i) B.col(i) = A.col(basis[i]);
    auto lu = B.partialPivLu();
    T.topLeftCorner(m, A.cols()) = lu.solve(A);
    T.topRightCorner(m, 1) = lu.solve(b);
    T.row(m).head(A.cols()) = cost;
    T(m, A.cols()) = 0.0;
    for (int i = 0; i < m; ++i)
        if (cost[basis[i]] != 0.0) T.row(m) -= cost[basis[i]] * T.row(i);
}

// Finds the leaving row for an entering column by the minimum-ratio test.
// Among rows whose ratio ties the minimum (within a small slack) the one
// with the largest pivot element wins, which keeps the basis well
// conditioned on degenerate vertices. Returns -1 when the column has no
// pivot.
int ratio_test(const Eigen::MatrixXd& T, const std::vector<int>& basis,
               int col) {
    const int m = static_cast<int>(T.rows()) - 1;
    const int rhs = static_cast<int>(T.cols()) - 1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        if (T(i, col) <= kPivTol) continue;
        best = std::min(best, T(i, rhs) / T(i, col));
    }
    if (best == std::numeric_limits<double>::infinity()) return -1;
    // second pass: the feasibility tolerance relaxes the bound by at most
    // 1e-11 per basic value, so the chosen row can overshoot only that far
    const double bound =
        [&] {
            double r = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i)
                if (T(i, col) > kPivTol)
                    r = std::min(r, (T(i, rhs) + 1e-11) / T(i, col));
            return r;
        }();
    int leave = -1;
    double biggest = 0.0;
    for (int i = 0; i < m; ++i) {
        if (T(i, col) <= kPivTol || T(i, rhs) / T(i, col) > bound) continue;
        if (T(i, col) > biggest ||
            (T(i, col) == biggest && basis[i] < basis[leave])) {
            biggest = T(i, col);
            leave = i;
        }
    }
    return leave;
}

// Simplex iterations restricted to the first `ncols` columns, minimizing
// `cost`. Pivots greedily on the most negative reduced cost and falls back to
// Bland's anti-cycling rule permanently once the objective stalls. Returns
// false on an unbounded descent direction; `bounded_below` suppresses that
// verdict for objectives that cannot descend forever (phase 1). Optimality is
// only declared on a freshly refactorized tableau.
bool run_simplex(Eigen::MatrixXd& T, std::vector<int>& basis,
                 const Eigen::MatrixXd& A, const Vector& b, const Vector& cost,
                 int ncols, bool bounded_below) {
    const int m = static_cast<int>(A.rows());
    const int rhs = static_cast<int>(T.cols()) - 1;
    Vector b_work = b;
    bool perturbed = false;
    std::mt19937 prng(0x9e3779b9u);
    refactorize(T, basis, A, b_work, cost);
    bool fresh = true, bland = false;
    int stall = 0;
    double last_obj = std::numeric_limits<double>::infinity();
    for (long iter = 0; iter < 500000; ++iter) {
        if (!std::isfinite(T(m, rhs)))
            throw NumericalFailure("simplex basis lost numerical stability");
        if (!fresh && iter % 512 == 0) {
            refactorize(T, basis, A, b_work, cost);
            fresh = true;
        }
        if (stall >= 512) {
            // Long degenerate stretch: push the right-hand side off the
            // degenerate vertex along the current basis so every basic value
            // turns strictly positive. Reduced costs do not depend on b, so
            // restoring the true b at optimality keeps the verdict exact.
            std::uniform_real_distribution<double> mag(0.5e-9, 1.5e-9);
            Eigen::MatrixXd B(m, m);
            Vector eta(m);
            for (int i = 0; i < m; ++i) {
                B.col(i) = A.col(basis[i]);
                eta[i] = mag(prng);
            }
            b_work += B * eta;
            refactorize(T, basis, A, b_work, cost);
            fresh = true;
            perturbed = true;
            bland = false;
            stall = 0;
            last_obj = std::numeric_limits<double>::infinity();
        }
        int enter = -1, leave = -1;
        if (!bland) {
            double most = -kCostTol;
            for (int j = 0; j < ncols; ++j)
                if (T(m, j) < most) {
                    most = T(m, j);
                    enter = j;
                }
            if (enter >= 0) leave = ratio_test(T, basis, enter);
        }
        if (leave < 0) {
            enter = -1;
            for (int j = 0; j < ncols && leave < 0; ++j) {
                if (T(m, j) >= -kCostTol) continue;
                leave = ratio_test(T, basis, j);
                if (leave >= 0)
                    enter = j;
                else if (!bounded_below && T(m, j) < -1e-6)
                    return false;
            }
        }
        if (enter < 0) {
            if (fresh && perturbed) {
                b_work = b;
                refactorize(T, basis, A, b_work, cost);
                perturbed = false;
                continue;
            }
            if (fresh) return true;
            refactorize(T, basis, A, b_work, cost);
            fresh = true;
            continue;
        }
        pivot(T, basis, leave, enter);
        fresh = false;
        double obj = -T(m, rhs);
        if (obj < last_obj - 1e-12 * (1.0 + std::abs(last_obj))) {
            last_obj = obj;
            stall = 0;
        } else if (++stall > 64) {
            bland = true; // degenerate stretch: guarantee termination
        }
    }
    throw NumericalFailure("simplex iteration limit exceeded");
}

} // namespace

LpResult solve_lp(const Eigen::MatrixXd& A, const Vector& b, const Vector& c) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    const int total = n + m; // original + artificial
    Eigen::MatrixXd Aall(m, total);
    Aall.leftCols(n) = A;
    Vector rhs = b;
    // flip rows to a nonnegative right-hand side before attaching artificials
    for (int i = 0; i < m; ++i)
        if (rhs[i] < 0.0) {
            Aall.row(i).head(n) = -Aall.row(i).head(n);
            rhs[i] = -rhs[i];
        }
    Aall.rightCols(m) = Eigen::MatrixXd::Identity(m, m);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, total + 1);
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;
    // phase 1: minimize the sum of artificials
    Vector phase1_cost = Vector::Zero(total);
    phase1_cost.tail(m).setOnes();
    run_simplex(T, basis, Aall, rhs, phase1_cost, total, true);
    double infeas = 0.0;
    for (int i = 0; i < m; ++i)
        if (basis[i] >= n) infeas += T(i, total);
    if (infeas > 1e-7) return {LpResult::Status::Infeasible, 0.0, {}};
    // drive remaining artificials out of the basis where possible
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n) continue;
        int col = -1;
        double biggest = 1e-8;
        for (int j = 0; j < n; ++j)
            if (std::abs(T(i, j)) > biggest) {
                biggest = std::abs(T(i, j));
                col = j;
            }
        if (col >= 0) pivot(T, basis, i, col);
    }
    // phase 2: the true objective, artificial columns blocked from reentry
    Vector phase2_cost = Vector::Zero(total);
    phase2_cost.head(n) = c;
    if (!run_simplex(T, basis, Aall, rhs, phase2_cost, n, false))
        return {LpResult::Status::Unbounded, 0.0, {}};
    LpResult res{LpResult::Status::Optimal, 0.0, Vector::Zero(n)};
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = T(i, total);
    res.objective = c.dot(res.x);
    return res;
}

} // namespace rsolve
