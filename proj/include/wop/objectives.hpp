#pragma once

#include <cstdint>

#include "wop/instance.hpp"
#include "wop/rational.hpp"
#include "wop/solution.hpp"

namespace wop {

// Total storage time: per item, base placement time of its location plus
// level times the location's per-level surcharge. Requires a feasible solution.
std::int64_t objective_o1(const WopSolution& solution, const Instance& instance);

// Total ground area occupied: sum of areas of level-0 items.
std::int64_t objective_o2(const WopSolution& solution, const Instance& instance);

struct Weights {
    Rat w1{1};
    Rat w2{1};
};

// score = w1*o1 + w2*o2; weights must be non-negative and not both zero.
Rat scalarize(std::int64_t o1, std::int64_t o2, const Weights& weights);

}  // namespace wop
