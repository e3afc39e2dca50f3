// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#include "rsolve/fuzz.hpp"

#include "rsolve/bisection.hpp"
#include "rsolve/homotopy.hpp"
#include "rsolve/oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace rsolve {

namespace {

using nlohmann::json;

Vector random_simplex(std::mt19937& rng, int n, bool allow_sparse) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vector p(n);
    for (int i = 0; i < n; ++i) p[i] = -std::log(unif(rng) + 1e-300);
    if (allow_sparse && n > 2 && unif(rng) < 0.4) {
        int zeros = std::uniform_int_distribution<int>(1, n - 2)(rng);
        for (int k = 0; k < zeros; ++k)
            p[std::uniform_int_distribution<int>(0, n - 1)(rng)] = 0.0;
        if (p.sum() == 0.0) p[0] = 1.0;
    }
    return p / p.sum();
}

Vector random_weights(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vector w(n);
    if (unif(rng) < 0.5) {
        // few distinct values to exercise weight ties
        int levels = std::uniform_int_distribution<int>(1, 3)(rng);
        std::vector<double> pool(levels);
        for (double& x : pool) x = 0.25 + 4.0 * unif(rng);
        for (int i = 0; i < n; ++i)
            w[i] = pool[std::uniform_int_distribution<int>(0, levels - 1)(rng)];
    } else {
        for (int i = 0; i < n; ++i) w[i] = 0.1 + 5.0 * unif(rng);
    }
    return w;
}

Vector random_values(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> unif(-10.0, 10.0);
    Vector z(n);
    for (int i = 0; i < n; ++i) z[i] = unif(rng);
    // occasional exact value ties
    if (n > 2 && std::uniform_real_distribution<double>(0, 1)(rng) < 0.25)
        z[0] = z[n - 1];
    return z;
}

json vec_to_json(const Vector& v) {
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Vector vec_from_json(const json& j) {
    auto v = j.get<std::vector<double>>();
    return Eigen::Map<const Vector>(v.data(), static_cast<long>(v.size()));
}

} // namespace

PairInstance random_pair(std::mt19937& rng, int n) {
    PairInstance inst;
    inst.z = random_values(rng, n);
    inst.pbar = random_simplex(rng, n, true);
    inst.w = random_weights(rng, n);
    double reach = 2.0 * inst.w.maxCoeff();
    inst.kappa =
        std::uniform_real_distribution<double>(0.0, 1.2 * reach)(rng);
    return inst;
}

StateInstance random_state(std::mt19937& rng, int n, int n_actions) {
    StateInstance inst;
    inst.w = random_weights(rng, n);
    for (int a = 0; a < n_actions; ++a) {
        inst.z.push_back(random_values(rng, n));
        inst.pbar.push_back(random_simplex(rng, n, true));
    }
    double reach = 2.0 * inst.w.maxCoeff() * n_actions;
    inst.kappa =
        std::uniform_real_distribution<double>(0.0, 1.2 * reach)(rng);
    return inst;
}

Rmdp random_mdp(std::mt19937& rng, int n_states, int max_actions) {
    std::uniform_int_distribution<int> na(1, max_actions);
    std::uniform_real_distribution<double> rew(-5.0, 5.0);
    Rmdp m;
    m.n_states = n_states;
    m.discount = std::uniform_real_distribution<double>(0.5, 0.99)(rng);
    m.actions.resize(n_states);
    for (int s = 0; s < n_states; ++s) {
        m.actions[s].resize(na(rng));
        for (auto& row : m.actions[s]) {
            Vector p = random_simplex(rng, n_states, true);
            for (int t = 0; t < n_states; ++t) {
                if (p[t] == 0.0) continue;
                row.index.push_back(t);
                row.prob.push_back(p[t]);
                row.reward.push_back(rew(rng));
            }
        }
    }
    m.validate();
    return m;
}

double replay_pair(const PairInstance& inst) {
    ResponseFunction f = homotopy_response(inst.z, inst.pbar, inst.w);
    auto ev = eval_response(f, inst.kappa);
    auto ref = lp_worst_case(inst.z, inst.pbar, inst.w, inst.kappa);
    double err = std::abs(ev.q - ref.value);
    // the cheap evaluation must agree with the reconstructed distribution
    err = std::max(err, std::abs(ev.q - response_value(f, inst.kappa)));
    err = std::max(err, std::abs(ev.p.dot(inst.z) - ev.q));
    return err;
}

double replay_state(const StateInstance& inst) {
    std::vector<ResponseFunction> fs;
    for (size_t a = 0; a < inst.z.size(); ++a)
        fs.push_back(homotopy_response(inst.z[a], inst.pbar[a], inst.w));
    double u = bisect_exact(fs, inst.kappa);
    double ref = lp_s_bellman(inst.z, inst.pbar, inst.w, inst.kappa);
    double err = std::abs(u - ref);
    // uniform fixed distribution against nature's primal LP
    Vector d = Vector::Constant(static_cast<long>(inst.z.size()),
                                1.0 / static_cast<double>(inst.z.size()));
    double split = s_bellman_policy(fs, d, inst.kappa).value;
    double ref_split =
        lp_s_policy_update(inst.z, inst.pbar, inst.w, d, inst.kappa);
    return std::max(err, std::abs(split - ref_split));
}

FuzzReport fuzz_pair(unsigned seed, long trials, int max_size,
                     int budget_points, double tol) {
    std::mt19937 rng(seed);
    FuzzReport rep;
    for (long t = 0; t < trials; ++t) {
        int n = std::uniform_int_distribution<int>(2, max_size)(rng);
        PairInstance inst = random_pair(rng, n);
        ResponseFunction f = homotopy_response(inst.z, inst.pbar, inst.w);
        double reach = std::max(f.max_budget(), 1e-3);
        for (int k = 0; k < budget_points; ++k) {
            PairInstance probe = inst;
            probe.kappa = reach * 1.1 * k / std::max(budget_points - 1, 1);
            double err;
            try {
                err = replay_pair(probe);
            } catch (const Error&) {
                err = std::numeric_limits<double>::infinity();
            }
            rep.max_error = std::max(rep.max_error, err);
            if (err > tol) {
                ++rep.failures;
                if (rep.first_failure.empty())
                    rep.first_failure = pair_to_json(probe);
            }
        }
        ++rep.trials;
    }
    return rep;
}

FuzzReport fuzz_state(unsigned seed, long trials, int max_size, int max_actions,
                      double tol) {
    std::mt19937 rng(seed);
    FuzzReport rep;
    for (long t = 0; t < trials; ++t) {
        int n = std::uniform_int_distribution<int>(2, max_size)(rng);
        int na = std::uniform_int_distribution<int>(1, max_actions)(rng);
        StateInstance inst = random_state(rng, n, na);
        double err;
        try {
            err = replay_state(inst);
        } catch (const Error&) {
            err = std::numeric_limits<double>::infinity();
        }
        rep.max_error = std::max(rep.max_error, err);
        if (err > tol) {
            ++rep.failures;
            if (rep.first_failure.empty())
                rep.first_failure = state_to_json(inst);
        }
        ++rep.trials;
    }
    return rep;
}

std::string pair_to_json(const PairInstance& inst) {
    json j{{"type", "pair"},
           {"z", vec_to_json(inst.z)},
           {"pbar", vec_to_json(inst.pbar)},
           {"w", vec_to_json(inst.w)},
           {"kappa", inst.kappa}};
    return j.dump(2);
}

PairInstance pair_from_json(const std::string& text) {
    json j = json::parse(text);
    PairInstance inst;
    inst.z = vec_from_json(j.at("z"));
    inst.pbar = vec_from_json(j.at("pbar"));
    inst.w = vec_from_json(j.at("w"));
    inst.kappa = j.at("kappa").get<double>();
    return inst;
}

std::string state_to_json(const StateInstance& inst) {
    json za = json::array(), pa = json::array();
    for (size_t a = 0; a < inst.z.size(); ++a) {
        za.push_back(vec_to_json(inst.z[a]));
        pa.push_back(vec_to_json(inst.pbar[a]));
    }
    json j{{"type", "state"},
           {"z", za},
           {"pbar", pa},
           {"w", vec_to_json(inst.w)},
           {"kappa", inst.kappa}};
    return j.dump(2);
}

StateInstance state_from_json(const std::string& text) {
    json j = json::parse(text);
    StateInstance inst;
    for (const auto& v : j.at("z")) inst.z.push_back(vec_from_json(v));
    for (const auto& v : j.at("pbar")) inst.pbar.push_back(vec_from_json(v));
    inst.w = vec_from_json(j.at("w"));
    inst.kappa = j.at("kappa").get<double>();
    return inst;
}

} // namespace rsolve
