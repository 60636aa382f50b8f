#pragma once

#include <string>
#include <vector>

#include "wop/instance.hpp"
#include "wop/solution.hpp"

namespace wop {

struct Violation {
    std::string rule;
    std::string detail;
};

struct FeasibilityReport {
    bool feasible = true;
    std::vector<Violation> violations;

    bool has(const std::string& rule) const {
        for (const Violation& v : violations)
            if (v.rule == rule) return true;
        return false;
    }
};

// Structural checks on the instance itself: id collisions, dangling type
// references, non-positive capacities/areas/stack heights, negative times.
FeasibilityReport validate_instance(const Instance& instance);

// Checks all complete-solution invariants: completeness, stack homogeneity,
// level contiguity, stack height, shelf eligibility, ground capacity.
// Unknown item/location ids are malformed input and throw, they are not
// reported as violations.
FeasibilityReport is_feasible(const WopSolution& solution, const Instance& instance);

// Partial-solution invariants: shelf eligibility and ground capacity.
FeasibilityReport is_feasible_partial(const PartialSolution& partial, const Instance& instance);

}  // namespace wop
