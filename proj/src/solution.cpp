#include "wop/solution.hpp"

#include <algorithm>
#include <fstream>
#include <vector>

namespace wop {

using nlohmann::json;

std::string canonical_key(const WopSolution& solution) {
    // location id -> slot -> members (item, level)
    std::map<std::string, std::map<std::int64_t, std::vector<std::pair<std::string, std::int64_t>>>> grouped;
    for (const auto& [item, pl] : solution.assignments) {
        grouped[pl.location_id][pl.stack_slot].emplace_back(item, pl.level);
    }
    std::string key;
    for (auto& [loc, slots] : grouped) {
        std::vector<std::string> stacks;
        stacks.reserve(slots.size());
        for (auto& [slot, members] : slots) {
            std::sort(members.begin(), members.end());
            json arr = json::array();
            for (const auto& [item, level] : members) arr.push_back(json::array({item, level}));
            stacks.push_back(arr.dump());
        }
        std::sort(stacks.begin(), stacks.end());
        key += json(loc).dump();
        key += ":[";
        for (std::size_t i = 0; i < stacks.size(); ++i) {
            if (i) key += ',';
            key += stacks[i];
        }
        key += "];";
    }
    return key;
}

json solution_to_json(const WopSolution& solution) {
    json j = json::object();
    for (const auto& [item, pl] : solution.assignments) {
        j[item] = {{"location", pl.location_id}, {"slot", pl.stack_slot}, {"level", pl.level}};
    }
    return j;
}

WopSolution solution_from_json(const json& j) {
    if (!j.is_object()) throw Error("parse-error", "solution document must be an object");
    WopSolution s;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const json& p = it.value();
        if (!p.is_object()) throw Error("parse-error", "placement for '" + it.key() + "' must be an object");
        for (auto pit = p.begin(); pit != p.end(); ++pit) {
            if (pit.key() != "location" && pit.key() != "slot" && pit.key() != "level")
                throw Error("parse-error", "unknown key '" + pit.key() + "' in placement of '" + it.key() + "'");
        }
        if (!p.contains("location") || !p.at("location").is_string())
            throw Error("parse-error", "placement of '" + it.key() + "' requires string 'location'");
        if (!p.contains("slot") || !p.at("slot").is_number_integer())
            throw Error("parse-error", "placement of '" + it.key() + "' requires integer 'slot'");
        if (!p.contains("level") || !p.at("level").is_number_integer())
            throw Error("parse-error", "placement of '" + it.key() + "' requires integer 'level'");
        Placement pl;
        pl.location_id = p.at("location").get<std::string>();
        pl.stack_slot = p.at("slot").get<std::int64_t>();
        pl.level = p.at("level").get<std::int64_t>();
        s.assignments.emplace(it.key(), std::move(pl));
    }
    return s;
}

WopSolution load_solution(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("io-error", "cannot open '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("parse-error", std::string(e.what()) + " in '" + path.string() + "'");
    }
    return solution_from_json(j);
}

void save_solution(const WopSolution& solution, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("io-error", "cannot write '" + path.string() + "'");
    out << solution_to_json(solution).dump(2) << "\n";
}

}  // namespace wop
