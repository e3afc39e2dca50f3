// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#include "rsolve/domains.hpp"

#include <array>
#include <cmath>
#include <map>
#include <random>

namespace rsolve {

namespace {

double normal_cdf(double x, double mu, double sigma) {
    return 0.5 * std::erfc(-(x - mu) / (sigma * std::sqrt(2.0)));
}

} // namespace

int inventory_initial_state(int capacity) { return capacity / 3; }

Rmdp make_inventory(int capacity) {
    if (capacity <= 0 || capacity % 6 != 0)
        throw BadCapacity("inventory capacity must be a positive multiple of 6");
    const int backlog = capacity / 3;
    const int max_order = capacity / 2;
    const int n = capacity + backlog; // levels -backlog .. capacity-1
    const double fixed_cost = 5.99, unit_cost = 1.0, holding = 0.1,
                 backlog_cost = 0.15, price = 1.6;
    const double mu = capacity / 2.0, sigma = capacity / 5.0;

    // integer demand 0..capacity from normal CDF differences, renormalized
    std::vector<double> demand(capacity + 1);
    double total = 0.0;
    for (int d = 0; d <= capacity; ++d) {
        demand[d] = normal_cdf(d + 0.5, mu, sigma) - normal_cdf(d - 0.5, mu, sigma);
        total += demand[d];
    }
    for (double& p : demand) p /= total;

    Rmdp m;
    m.n_states = n;
    m.discount = 0.995;
    m.actions.resize(n);
    m.initial_dist = Vector::Zero(n);
    m.initial_dist[backlog + 0] = 1.0; // level 0
    for (int s = 0; s < n; ++s) {
        const int level = s - backlog;
        const int n_orders = std::min(max_order - 1, capacity - 1 - level) + 1;
        m.actions[s].resize(std::max(n_orders, 1));
        for (int o = 0; o < std::max(n_orders, 1); ++o) {
            const int stock = level + o;
            struct Cell { double p = 0.0, pr = 0.0; };
            std::map<int, Cell> cells;
            for (int d = 0; d <= capacity; ++d) {
                int next = std::max(stock - d, -backlog);
                double sold = stock - next;
                double reward = price * sold - (o > 0 ? fixed_cost : 0.0) -
                                unit_cost * o - holding * std::max(next, 0) -
                                backlog_cost * std::max(-next, 0);
                Cell& c = cells[next + backlog];
                c.p += demand[d];
                c.pr += demand[d] * reward;
            }
            SparseRow& row = m.actions[s][o];
            for (const auto& [to, c] : cells) {
                row.index.push_back(to);
                row.prob.push_back(c.p);
                row.reward.push_back(c.pr / c.p);
            }
        }
    }
    m.validate();
    return m;
}

Rmdp make_cartpole(int n_states, unsigned seed, int samples) {
    if (n_states < 2) throw Error("cart-pole needs at least two states");
    const double gravity = 9.8, masscart = 1.0, masspole = 0.1, length = 0.5,
                 force_mag = 10.0, tau = 0.02;
    const double total_mass = masscart + masspole;
    const double polemass_length = masspole * length;
    const double x_lim = 2.4, theta_lim = 12.0 * M_PI / 180.0;
    const std::array<double, 4> box = {x_lim, 3.0, theta_lim, 3.0};

    using State = std::array<double, 4>;
    auto step = [&](State s, int action) {
        double force = action == 1 ? force_mag : -force_mag;
        double ct = std::cos(s[2]), st = std::sin(s[2]);
        double temp = (force + polemass_length * s[3] * s[3] * st) / total_mass;
        double thetaacc = (gravity * st - ct * temp) /
                          (length * (4.0 / 3.0 - masspole * ct * ct / total_mass));
        double xacc = temp - polemass_length * thetaacc * ct / total_mass;
        s[0] += tau * s[1];
        s[1] += tau * xacc;
        s[2] += tau * s[3];
        s[3] += tau * thetaacc;
        return s;
    };
    auto terminal = [&](const State& s) {
        return std::abs(s[0]) > x_lim || std::abs(s[2]) > theta_lim;
    };

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const int term = n_states - 1; // aggregate terminal state
    std::vector<State> centers(term);
    for (auto& c : centers)
        for (int k = 0; k < 4; ++k) c[k] = unif(rng) * box[k];
    auto nearest = [&](const State& s) {
        if (terminal(s)) return term;
        int best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (int i = 0; i < term; ++i) {
            double d = 0.0;
            for (int k = 0; k < 4; ++k) {
                double diff = (s[k] - centers[i][k]) / box[k];
                d += diff * diff;
            }
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        return best;
    };

    Rmdp m;
    m.n_states = n_states;
    m.discount = 0.99;
    m.actions.resize(n_states);
    std::normal_distribution<double> noise(0.0, 0.05);
    for (int s = 0; s < term; ++s) {
        m.actions[s].resize(2);
        for (int a = 0; a < 2; ++a) {
            std::map<int, int> counts;
            for (int k = 0; k < samples; ++k) {
                State start = centers[s];
                for (int d = 0; d < 4; ++d) start[d] += noise(rng) * box[d];
                ++counts[nearest(step(start, a))];
            }
            SparseRow& row = m.actions[s][a];
            for (const auto& [to, cnt] : counts) {
                row.index.push_back(to);
                row.prob.push_back(static_cast<double>(cnt) / samples);
                row.reward.push_back(1.0);
            }
        }
    }
    m.actions[term].resize(2);
    for (int a = 0; a < 2; ++a) {
        m.actions[term][a].index = {term};
        m.actions[term][a].prob = {1.0};
        m.actions[term][a].reward = {0.0};
    }
    m.initial_dist = Vector::Zero(n_states);
    m.initial_dist[nearest({0.0, 0.0, 0.0, 0.0})] = 1.0;
    m.validate();
    return m;
}

Vector value_based_weights(const Vector& v) {
    Vector dev = (v.array() - v.mean()).abs();
    double mx = dev.maxCoeff();
    if (mx == 0.0) return Vector::Ones(v.size());
    Vector w = dev / mx;
    for (int i = 0; i < w.size(); ++i) w[i] = std::max(w[i], 1e-6);
    return w;
}

} // namespace rsolve
