#include "wop/feasibility.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace wop {

namespace {

void add(FeasibilityReport& report, std::string rule, std::string detail) {
    report.feasible = false;
    report.violations.push_back({std::move(rule), std::move(detail)});
}

}  // namespace

FeasibilityReport validate_instance(const Instance& instance) {
    FeasibilityReport report;

    std::unordered_set<std::string> seen;
    for (const Location& l : instance.locations) {
        if (!seen.insert(l.id).second) add(report, "duplicate-id", "location id '" + l.id + "' repeats");
        if (l.capacity < 1) add(report, "non-positive-capacity", "location '" + l.id + "' has capacity " + std::to_string(l.capacity));
        if (l.base_place_time < 0) add(report, "negative-time", "location '" + l.id + "' has negative base_place_time");
        if (l.per_level_time < 0) add(report, "negative-time", "location '" + l.id + "' has negative per_level_time");
    }
    seen.clear();
    std::unordered_set<std::string> type_ids;
    for (const ItemType& t : instance.item_types) {
        if (!seen.insert(t.id).second) add(report, "duplicate-id", "item type id '" + t.id + "' repeats");
        type_ids.insert(t.id);
        if (t.area < 1) add(report, "non-positive-area", "item type '" + t.id + "' has area " + std::to_string(t.area));
        if (t.max_stack_height < 1)
            add(report, "non-positive-stack-height",
                "item type '" + t.id + "' has max_stack_height " + std::to_string(t.max_stack_height));
    }
    seen.clear();
    for (const Item& it : instance.items) {
        if (!seen.insert(it.id).second) add(report, "duplicate-id", "item id '" + it.id + "' repeats");
        if (!type_ids.count(it.type_id))
            add(report, "dangling-type", "item '" + it.id + "' references unknown type '" + it.type_id + "'");
    }
    if (instance.locations.empty()) add(report, "empty-instance", "instance has no locations");
    if (instance.items.empty()) add(report, "empty-instance", "instance has no items");
    return report;
}

FeasibilityReport is_feasible(const WopSolution& solution, const Instance& instance) {
    InstanceIndex index(instance);
    FeasibilityReport report;

    for (const auto& [item_id, pl] : solution.assignments) {
        index.item(item_id);          // throws unknown-item on malformed input
        index.location(pl.location_id);  // throws unknown-location
        if (pl.stack_slot < 0 || pl.level < 0)
            throw Error("malformed-solution", "item '" + item_id + "' has negative slot or level");
    }
    for (const Item& it : instance.items) {
        if (!solution.assignments.count(it.id)) add(report, "incomplete", "item '" + it.id + "' is unplaced");
    }

    // stacks keyed by (location, slot)
    std::map<std::pair<std::string, std::int64_t>, std::vector<std::pair<std::int64_t, std::string>>> stacks;
    for (const auto& [item_id, pl] : solution.assignments) {
        stacks[{pl.location_id, pl.stack_slot}].emplace_back(pl.level, item_id);
    }

    std::map<std::string, std::int64_t> ground_area;  // per location
    for (auto& [slot_key, members] : stacks) {
        std::sort(members.begin(), members.end());
        const Location& loc = index.location(slot_key.first);
        const ItemType& first_type = index.type_of_item(members.front().second);

        bool mixed = false;
        for (const auto& [level, item_id] : members) {
            const ItemType& t = index.type_of_item(item_id);
            if (t.id != first_type.id) mixed = true;
            if (level >= t.max_stack_height)
                add(report, "stack-height",
                    "item '" + item_id + "' at level " + std::to_string(level) + " exceeds max height " +
                        std::to_string(t.max_stack_height) + " of type '" + t.id + "'");
            if (!t.shelf_allowed && loc.kind == LocationKind::Shelf)
                add(report, "shelf-prohibited", "item '" + item_id + "' of type '" + t.id + "' sits in shelf '" + loc.id + "'");
        }
        if (mixed)
            add(report, "stack-mixed-type",
                "stack at '" + slot_key.first + "' slot " + std::to_string(slot_key.second) + " mixes item types");

        bool contiguous = true;
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (members[i].first != static_cast<std::int64_t>(i)) contiguous = false;
        }
        if (!contiguous)
            add(report, "stack-contiguity",
                "stack at '" + slot_key.first + "' slot " + std::to_string(slot_key.second) +
                    " does not occupy contiguous levels from 0");
        if (static_cast<std::int64_t>(members.size()) > first_type.max_stack_height && !mixed)
            add(report, "stack-height",
                "stack at '" + slot_key.first + "' slot " + std::to_string(slot_key.second) + " has " +
                    std::to_string(members.size()) + " items, max is " + std::to_string(first_type.max_stack_height));

        if (members.front().first == 0) ground_area[loc.id] += index.type_of_item(members.front().second).area;
    }

    for (const auto& [loc_id, used] : ground_area) {
        const Location& loc = index.location(loc_id);
        if (used > loc.capacity)
            add(report, "capacity",
                "location '" + loc_id + "' holds ground area " + std::to_string(used) + " over capacity " +
                    std::to_string(loc.capacity));
    }
    return report;
}

FeasibilityReport is_feasible_partial(const PartialSolution& partial, const Instance& instance) {
    InstanceIndex index(instance);
    FeasibilityReport report;
    std::map<std::string, std::int64_t> ground_area;
    for (const auto& [item_id, loc_id] : partial.assignments) {
        const ItemType& t = index.type_of_item(item_id);
        const Location& loc = index.location(loc_id);
        if (!eligible(t, loc))
            add(report, "shelf-prohibited", "item '" + item_id + "' of type '" + t.id + "' sits in shelf '" + loc.id + "'");
        ground_area[loc_id] += t.area;
    }
    for (const auto& [loc_id, used] : ground_area) {
        const Location& loc = index.location(loc_id);
        if (used > loc.capacity)
            add(report, "capacity",
                "location '" + loc_id + "' holds ground area " + std::to_string(used) + " over capacity " +
                    std::to_string(loc.capacity));
    }
    return report;
}

}  // namespace wop
