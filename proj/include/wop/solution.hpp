#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "wop/instance.hpp"

namespace wop {

struct Placement {
    std::string location_id;
    std::int64_t stack_slot = 0;  // footprint index within the location
    std::int64_t level = 0;       // 0 = ground
};

// Complete solution: every item of the instance mapped to a placement.
struct WopSolution {
    std::map<std::string, Placement> assignments;  // item id -> placement
};

// Ground-level-only assignment; items absent from the map are unplaced.
struct PartialSolution {
    std::map<std::string, std::string> assignments;  // item id -> location id
};

// Canonical encoding of a complete solution. Invariant under stack_slot
// relabeling within a location and under iteration order; distinct whenever
// any item sits at a different (location, level) or in a different stack.
std::string canonical_key(const WopSolution& solution);

// {item_id: {location, slot, level}}
nlohmann::json solution_to_json(const WopSolution& solution);
WopSolution solution_from_json(const nlohmann::json& j);

WopSolution load_solution(const std::filesystem::path& path);
void save_solution(const WopSolution& solution, const std::filesystem::path& path);

}  // namespace wop
