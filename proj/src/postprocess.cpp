#include "wop/postprocess.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <thread>
#include <tuple>

#include "wop/cqm.hpp"

namespace wop {

bool PopulationBuilder::add(const std::optional<WopSolution>& candidate) {
    ++population_.stats.generated;
    if (!candidate) {
        ++population_.stats.dropped_infeasible;
        return false;
    }
    if (!is_feasible(*candidate, *instance_).feasible) {
        ++population_.stats.dropped_infeasible;
        return false;
    }
    std::string key = canonical_key(*candidate);
    if (!population_.keys.insert(key).second) {
        ++population_.stats.dropped_duplicate;
        return false;
    }
    population_.solutions.push_back(*candidate);
    return true;
}

namespace {

struct OpenStack {
    std::string location_id;
    std::int64_t slot;
    std::int64_t per_level_time;
    std::int64_t height;      // current number of levels
    std::int64_t max_height;  // type's stack limit
};

// Ascending (per_level_time, location id, slot): the cheapest o1 increment
// with a deterministic tie-break.
bool stack_order(const OpenStack& a, const OpenStack& b) {
    return std::tie(a.per_level_time, a.location_id, a.slot) < std::tie(b.per_level_time, b.location_id, b.slot);
}

}  // namespace

std::optional<WopSolution> complete_solution(const PartialSolution& partial, const Instance& instance) {
    InstanceIndex index(instance);
    WopSolution solution;

    // every ground-placed item opens one stack; slots per location follow
    // item id order
    std::map<std::string, std::int64_t> slots_used;
    std::map<std::string, std::vector<OpenStack>> stacks_by_type;
    for (const auto& [item_id, loc_id] : partial.assignments) {
        const Location& loc = index.location(loc_id);
        const ItemType& type = index.type_of_item(item_id);
        std::int64_t slot = slots_used[loc_id]++;
        solution.assignments[item_id] = {loc_id, slot, 0};
        stacks_by_type[type.id].push_back({loc_id, slot, loc.per_level_time, 1, type.max_stack_height});
    }
    for (auto& [type_id, stacks] : stacks_by_type) std::sort(stacks.begin(), stacks.end(), stack_order);

    // unplaced items, grouped by type in item id order
    std::map<std::string, std::vector<std::string>> unplaced_by_type;
    for (const Item& item : instance.items) {
        if (!partial.assignments.count(item.id)) unplaced_by_type[item.type_id].push_back(item.id);
    }

    for (auto& [type_id, item_ids] : unplaced_by_type) {
        auto stacks_it = stacks_by_type.find(type_id);
        if (stacks_it == stacks_by_type.end()) return std::nullopt;
        auto stack = stacks_it->second.begin();
        for (const std::string& item_id : item_ids) {
            while (stack != stacks_it->second.end() && stack->height >= stack->max_height) ++stack;
            if (stack == stacks_it->second.end()) return std::nullopt;
            solution.assignments[item_id] = {stack->location_id, stack->slot, stack->height};
            ++stack->height;
        }
    }
    return solution;
}

WopSolution create_mutant(const WopSolution& solution, const Instance& instance, double mutant_probability, Rng& rng,
                          MutantStats* stats) {
    FeasibilityReport report = is_feasible(solution, instance);
    if (!report.feasible)
        throw Error("infeasible-solution", report.violations.front().rule + ": " + report.violations.front().detail);
    InstanceIndex index(instance);

    // stack heights keyed by (location, slot); input_height stays frozen to
    // decide eligibility, height tracks the mutated state
    std::map<std::pair<std::string, std::int64_t>, std::int64_t> input_height;
    std::map<std::pair<std::string, std::int64_t>, std::string> stack_type;
    for (const auto& [item_id, pl] : solution.assignments) {
        auto key = std::make_pair(pl.location_id, pl.stack_slot);
        input_height[key] = std::max(input_height[key], pl.level + 1);
        stack_type[key] = index.type_of_item(item_id).id;
    }
    std::map<std::pair<std::string, std::int64_t>, std::int64_t> height = input_height;

    // eligible movers: single ground items of a stackable type, in item id order
    WopSolution mutant = solution;
    for (const auto& [item_id, pl] : solution.assignments) {
        const ItemType& type = index.type_of_item(item_id);
        auto own = std::make_pair(pl.location_id, pl.stack_slot);
        if (pl.level != 0 || type.max_stack_height < 2) continue;
        if (input_height[own] != 1) continue;

        if (stats) ++stats->draws;
        bool success = uniform01(rng) < mutant_probability;
        if (stats && success) ++stats->successes;
        if (!success) continue;

        if (height[own] != 1) continue;  // an earlier mover landed on this item

        bool found = false;
        OpenStack best{};
        for (const auto& [key, h] : height) {
            if (key == own || h == 0) continue;
            if (stack_type[key] != type.id || h >= type.max_stack_height) continue;
            OpenStack cand{key.first, key.second, index.location(key.first).per_level_time, h, type.max_stack_height};
            if (!found || stack_order(cand, best)) {
                best = cand;
                found = true;
            }
        }
        if (!found) continue;

        mutant.assignments[item_id] = {best.location_id, best.slot, height[{best.location_id, best.slot}]};
        ++height[{best.location_id, best.slot}];
        height[own] = 0;
        if (stats) ++stats->moves;
    }
    return mutant;
}

Population filter_population(const std::vector<std::optional<WopSolution>>& candidates, const Instance& instance) {
    PopulationBuilder builder(instance);
    for (const auto& candidate : candidates) builder.add(candidate);
    return builder.take();
}

Population run_qi4wop(const Instance& instance, const QI4WOPConfig& config, SolverBackend& backend, int workers) {
    FeasibilityReport valid = validate_instance(instance);
    if (!valid.feasible)
        throw Error("invalid-instance", valid.violations.front().rule + ": " + valid.violations.front().detail);

    auto t0 = std::chrono::steady_clock::now();
    CqmModel model = build_subwop_model(instance);
    SampleSet samples = backend.sample(model, config.sampler);
    auto t1 = std::chrono::steady_clock::now();

    const std::size_t n = samples.samples.size();
    std::vector<std::optional<WopSolution>> candidates(2 * n);
    auto process = [&](std::size_t i) {
        const Sample& sample = samples.samples[i];
        if (!sample.evaluation.feasible) return;  // both candidates stay empty
        PartialSolution partial = assignment_to_partial(sample.assignment, model, instance);
        std::optional<WopSolution> completed = complete_solution(partial, instance);
        candidates[2 * i] = completed;
        if (completed) {
            Rng rng(derive_seed(config.p2_seed, i));
            candidates[2 * i + 1] = create_mutant(*completed, instance, config.mutant_probability, rng);
        }
    };
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) process(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                process(i);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    Population population = filter_population(candidates, instance);
    auto t2 = std::chrono::steady_clock::now();
    population.p1_wall_ms = samples.wall_time_ms > 0
                                ? samples.wall_time_ms
                                : std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    population.p2_wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t2 - t1).count();
    return population;
}

nlohmann::json population_to_json(const Population& population) {
    nlohmann::json solutions = nlohmann::json::array();
    for (const WopSolution& s : population.solutions) solutions.push_back(solution_to_json(s));
    return nlohmann::json{{"solutions", solutions},
                          {"stats",
                           {{"generated", population.stats.generated},
                            {"dropped_duplicate", population.stats.dropped_duplicate},
                            {"dropped_infeasible", population.stats.dropped_infeasible}}}};
}

}  // namespace wop
