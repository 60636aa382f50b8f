#include "wop/objectives.hpp"

#include "wop/feasibility.hpp"

namespace wop {

namespace {

void require_feasible(const WopSolution& solution, const Instance& instance) {
    FeasibilityReport report = is_feasible(solution, instance);
    if (!report.feasible) {
        throw Error("infeasible-solution", report.violations.front().rule + ": " + report.violations.front().detail);
    }
}

}  // namespace

std::int64_t objective_o1(const WopSolution& solution, const Instance& instance) {
    require_feasible(solution, instance);
    InstanceIndex index(instance);
    std::int64_t total = 0;
    for (const auto& [item_id, pl] : solution.assignments) {
        const Location& loc = index.location(pl.location_id);
        total += loc.base_place_time + pl.level * loc.per_level_time;
    }
    return total;
}

std::int64_t objective_o2(const WopSolution& solution, const Instance& instance) {
    require_feasible(solution, instance);
    InstanceIndex index(instance);
    std::int64_t total = 0;
    for (const auto& [item_id, pl] : solution.assignments) {
        if (pl.level == 0) total += index.type_of_item(item_id).area;
    }
    return total;
}

Rat scalarize(std::int64_t o1, std::int64_t o2, const Weights& weights) {
    if (weights.w1 < Rat(0) || weights.w2 < Rat(0)) throw Error("invalid-weights", "weights must be non-negative");
    if (weights.w1 == Rat(0) && weights.w2 == Rat(0)) throw Error("invalid-weights", "weights must not both be zero");
    return weights.w1 * Rat(o1) + weights.w2 * Rat(o2);
}

}  // namespace wop
