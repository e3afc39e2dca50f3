// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#include "rsolve/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace rsolve {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        auto b = field.find_first_not_of(" \t\r");
        auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

int find_column(const std::vector<std::string>& header, const std::string& name,
                bool required = true) {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    if (required) throw MissingColumn(name);
    return -1;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open file: " + path);
    return f;
}

bool read_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return true;
    }
    return false;
}

} // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int IdMap::intern(long ext) {
    auto [it, inserted] = to_internal.try_emplace(
        ext, static_cast<int>(to_external.size()));
    if (inserted) to_external.push_back(ext);
    return it->second;
}

LoadedModel load_transitions(std::istream& in, double discount) {
    std::string line;
    if (!read_line(in, line)) throw Error("empty transition file");
    auto header = split_csv(line);
    int c_from = find_column(header, "idstatefrom");
    int c_act = find_column(header, "idaction");
    int c_to = find_column(header, "idstateto");
    int c_p = find_column(header, "probability");
    int c_r = find_column(header, "reward");

    LoadedModel out;
    Rmdp& m = out.model;
    m.discount = discount;
    // accumulate entries keyed by (from, action, to)
    struct Cell { double p = 0.0, pr = 0.0; };
    std::map<std::tuple<int, long, int>, Cell> cells;
    long line_no = 1;
    while (read_line(in, line)) {
        ++line_no;
        auto f = split_csv(line);
        size_t need = std::max({c_from, c_act, c_to, c_p, c_r});
        if (f.size() <= need)
            throw Error("short CSV row at line " + std::to_string(line_no));
        int s = out.states.intern(std::stol(f[c_from]));
        long a = std::stol(f[c_act]);
        int t = out.states.intern(std::stol(f[c_to]));
        double p = std::stod(f[c_p]);
        double r = std::stod(f[c_r]);
        Cell& c = cells[{s, a, t}];
        c.p += p;
        c.pr += p * r;
    }
    m.n_states = static_cast<int>(out.states.to_external.size());
    m.actions.resize(m.n_states);
    for (const auto& [key, c] : cells) {
        auto [s, a, t] = key;
        if (a < 0) throw Error("negative action id");
        if (static_cast<size_t>(a) >= m.actions[s].size())
            m.actions[s].resize(a + 1);
        SparseRow& row = m.actions[s][a];
        row.index.push_back(t);
        row.prob.push_back(c.p);
        row.reward.push_back(c.p > 0.0 ? c.pr / c.p : 0.0);
    }
    m.validate();
    return out;
}

LoadedModel load_transitions_file(const std::string& path, double discount) {
    auto f = open_or_throw(path);
    return load_transitions(f, discount);
}

void save_transitions(std::ostream& out, const Rmdp& model,
                      const IdMap& states) {
    out << "idstatefrom,idaction,idstateto,probability,reward\n";
    for (int s = 0; s < model.n_states; ++s)
        for (int a = 0; a < model.action_count(s); ++a) {
            const SparseRow& row = model.actions[s][a];
            for (size_t k = 0; k < row.size(); ++k)
                out << states.external(s) << ',' << a << ','
                    << states.external(row.index[k]) << ','
                    << format_double(row.prob[k]) << ','
                    << format_double(row.reward[k]) << '\n';
        }
}

void save_transitions_file(const std::string& path, const Rmdp& model,
                           const IdMap& states) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write file: " + path);
    save_transitions(f, model, states);
}

RunConfig load_config_file(const std::string& path) {
    auto f = open_or_throw(path);
    auto dir = std::filesystem::path(path).parent_path();
    RunConfig cfg;
    std::string line;
    while (std::getline(f, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "discount") {
            cfg.discount = std::stod(val);
        } else if (key == "rectangularity") {
            if (val == "sa") cfg.ambiguity.kind = Rectangularity::SA;
            else if (val == "s") cfg.ambiguity.kind = Rectangularity::S;
            else throw UnsupportedRectangularity("unknown rectangularity: " + val);
        } else if (key == "budget_default") {
            cfg.ambiguity.budget_default = std::stod(val);
            if (cfg.ambiguity.budget_default < 0)
                throw NegativeBudget("budget_default must be nonnegative");
        } else if (key == "budgets_csv") {
            cfg.budgets_csv = (dir / val).string();
        } else if (key == "weights_csv") {
            cfg.weights_csv = (dir / val).string();
        } else if (key == "support_restricted") {
            cfg.ambiguity.support_restricted = val != "0";
        } else {
            throw Error("unknown config key: " + key);
        }
    }
    return cfg;
}

void resolve_config(RunConfig& cfg, const Rmdp& model, const IdMap& states) {
    AmbiguityConfig& amb = cfg.ambiguity;
    if (!cfg.budgets_csv.empty()) {
        auto f = open_or_throw(cfg.budgets_csv);
        std::string line;
        if (!read_line(f, line)) throw Error("empty budget file");
        auto header = split_csv(line);
        int c_s = find_column(header, "idstate");
        int c_a = find_column(header, "idaction", false);
        int c_b = find_column(header, "budget");
        if (c_a >= 0) {
            amb.budgets_sa.resize(model.n_states);
            for (int s = 0; s < model.n_states; ++s)
                amb.budgets_sa[s].assign(model.action_count(s),
                                         amb.budget_default);
            while (read_line(f, line)) {
                auto fl = split_csv(line);
                int s = amb.budgets_sa.empty()
                            ? 0
                            : states.to_internal.at(std::stol(fl[c_s]));
                amb.budgets_sa[s][std::stol(fl[c_a])] = std::stod(fl[c_b]);
            }
        } else {
            amb.budgets_s.assign(model.n_states, amb.budget_default);
            while (read_line(f, line)) {
                auto fl = split_csv(line);
                amb.budgets_s[states.to_internal.at(std::stol(fl[c_s]))] =
                    std::stod(fl[c_b]);
            }
        }
    }
    if (!cfg.weights_csv.empty()) {
        auto f = open_or_throw(cfg.weights_csv);
        std::string line;
        if (!read_line(f, line)) throw Error("empty weight file");
        auto header = split_csv(line);
        int c_s = find_column(header, "idstate");
        int c_w = find_column(header, "weight");
        amb.weights = Vector::Ones(model.n_states);
        while (read_line(f, line)) {
            auto fl = split_csv(line);
            amb.weights[states.to_internal.at(std::stol(fl[c_s]))] =
                std::stod(fl[c_w]);
        }
    }
    amb.ensure_weights(model.n_states);
    amb.validate(model);
}

Vector load_value_file(const std::string& path, const IdMap& states) {
    auto f = open_or_throw(path);
    std::string line;
    if (!read_line(f, line)) throw Error("empty value file");
    auto header = split_csv(line);
    int c_s = find_column(header, "idstate");
    int c_v = find_column(header, "value");
    Vector v = Vector::Zero(static_cast<int>(states.to_external.size()));
    while (read_line(f, line)) {
        auto fl = split_csv(line);
        v[states.to_internal.at(std::stol(fl[c_s]))] = std::stod(fl[c_v]);
    }
    return v;
}

void save_value_file(const std::string& path, const Vector& v,
                     const IdMap& states) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write file: " + path);
    f << "idstate,value\n";
    for (int s = 0; s < v.size(); ++s)
        f << states.external(s) << ',' << format_double(v[s]) << '\n';
}

Policy load_policy_file(const std::string& path, const Rmdp& model,
                        const IdMap& states) {
    auto f = open_or_throw(path);
    std::string line;
    if (!read_line(f, line)) throw Error("empty policy file");
    auto header = split_csv(line);
    int c_s = find_column(header, "idstate");
    int c_a = find_column(header, "idaction");
    int c_p = find_column(header, "probability");
    Policy pi;
    pi.action_dist.resize(model.n_states);
    for (int s = 0; s < model.n_states; ++s)
        pi.action_dist[s] = Vector::Zero(model.action_count(s));
    while (read_line(f, line)) {
        auto fl = split_csv(line);
        int s = states.to_internal.at(std::stol(fl[c_s]));
        pi.action_dist[s][std::stol(fl[c_a])] = std::stod(fl[c_p]);
    }
    pi.validate(model);
    return pi;
}

void save_policy_file(const std::string& path, const Policy& pi,
                      const IdMap& states) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write file: " + path);
    f << "idstate,idaction,probability\n";
    for (size_t s = 0; s < pi.action_dist.size(); ++s)
        for (int a = 0; a < pi.action_dist[s].size(); ++a)
            if (pi.action_dist[s][a] != 0.0)
                f << states.external(static_cast<int>(s)) << ',' << a << ','
                  << format_double(pi.action_dist[s][a]) << '\n';
}

} // namespace rsolve
