// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#pragma once

#include "rsolve/types.hpp"

#include <iosfwd>
#include <string>

namespace rsolve {

/// Mapping between external (file) ids and dense internal indices.
struct IdMap {
    std::vector<long> to_external;       // internal -> external
    std::map<long, int> to_internal;     // external -> internal

    int intern(long ext); // inserts on first sight
    long external(int i) const { return to_external[i]; }
};

struct LoadedModel {
    Rmdp model;
    IdMap states;
};

/// Reads a transition table in CSV form with the header
/// idstatefrom,idaction,idstateto,probability,reward. Duplicate
/// (from,action,to) rows have their probabilities summed and their rewards
/// probability-weight averaged. State ids are densified in order of first
/// appearance; action ids must be dense per state starting at 0.
LoadedModel load_transitions(std::istream& in, double discount);
LoadedModel load_transitions_file(const std::string& path, double discount);

/// Writes a transition table in the same CSV format with %.17g precision so
/// that a load/save cycle is bit-identical.
void save_transitions(std::ostream& out, const Rmdp& model, const IdMap& states);
void save_transitions_file(const std::string& path, const Rmdp& model,
                           const IdMap& states);

/// Solver configuration file: line oriented key=value pairs with '#' comments.
/// Recognized keys: discount, rectangularity (sa|s), budget_default,
/// budgets_csv, weights_csv, support_restricted (0|1). Paths are resolved
/// relative to the directory of the config file.
struct RunConfig {
    double discount = 0.9;
    AmbiguityConfig ambiguity;
    std::string budgets_csv; // resolved path, empty if absent
    std::string weights_csv;
};

RunConfig load_config_file(const std::string& path);

/// Applies budgets/weights CSV files referenced by a config, translating
/// external ids through the model's id map.
void resolve_config(RunConfig& cfg, const Rmdp& model, const IdMap& states);

Vector load_value_file(const std::string& path, const IdMap& states);
void save_value_file(const std::string& path, const Vector& v,
                     const IdMap& states);

Policy load_policy_file(const std::string& path, const Rmdp& model,
                        const IdMap& states);
void save_policy_file(const std::string& path, const Policy& pi,
                      const IdMap& states);

/// Shortest decimal form that round-trips a double exactly.
std::string format_double(double x);

} // namespace rsolve
