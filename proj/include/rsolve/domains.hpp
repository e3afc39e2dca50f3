// This file is part of rsolve, a C++ library for solving robust Markov
// decision processes with weighted L1 ambiguity sets.
//
// MIT License (see types.hpp for the full license text).

#pragma once

#include "rsolve/types.hpp"

namespace rsolve {

/// Single-product inventory control with backlogging. A capacity of I yields
/// 4I/3 inventory levels from -I/3 (maximal backlog) to I-1, at most I/2
/// order quantities per level, and integer demand distributed as a
/// discretized normal with mean I/2 and deviation I/5. The capacity must be
/// divisible by 6 so the level and order ranges are integral.
Rmdp make_inventory(int capacity);

/// Index of the zero-inventory level, where the initial distribution of the
/// generated model puts all mass.
int inventory_initial_state(int capacity);

/// Aggregated cart-pole: centers are sampled uniformly over the non-terminal
/// state box with a seeded generator, transitions are estimated by simulating
/// perturbed starts from each center and mapping the successor to the nearest
/// center. The last state aggregates all terminal positions and absorbs with
/// zero reward; every other transition earns one unit.
Rmdp make_cartpole(int n_states, unsigned seed, int samples = 100);

/// Next-state weights from a value estimate: absolute deviation from the mean
/// value, scaled so the largest weight is one and floored at 1e-6. A constant
/// estimate yields uniform weights.
Vector value_based_weights(const Vector& v);

} // namespace rsolve
