#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "wop/feasibility.hpp"
#include "wop/rng.hpp"
#include "wop/solvers.hpp"

namespace wop {

struct PopulationStats {
    std::int64_t generated = 0;
    std::int64_t dropped_duplicate = 0;
    std::int64_t dropped_infeasible = 0;
};

// Deduplicated set of feasible complete solutions (M = solutions.size()).
struct Population {
    std::vector<WopSolution> solutions;
    std::set<std::string> keys;  // canonical keys, one per solution
    PopulationStats stats;
    Millis p1_wall_ms = 0;  // sampling phase, when produced by the pipeline
    Millis p2_wall_ms = 0;  // completion + mutation + filtering
};

// Incremental filter with the same semantics as filter_population.
class PopulationBuilder {
public:
    explicit PopulationBuilder(const Instance& instance) : instance_(&instance) {}

    // Returns true when the candidate was kept.
    bool add(const std::optional<WopSolution>& candidate);
    Population take() { return std::move(population_); }
    std::int64_t size() const { return static_cast<std::int64_t>(population_.solutions.size()); }

private:
    const Instance* instance_;
    Population population_;
};

// Completes a partial solution by stacking every unplaced item onto the
// stacks opened by ground-placed items of its type. Stacks fill in ascending
// (per_level_time, location id, slot) order. Empty result when the unplaced
// items do not fit.
std::optional<WopSolution> complete_solution(const PartialSolution& partial, const Instance& instance);

struct MutantStats {
    std::int64_t draws = 0;      // one per eligible mover
    std::int64_t successes = 0;  // coin came up "stack"
    std::int64_t moves = 0;      // successes with a compatible target
};

// Diversity step: each single ground item of a stackable type is, with the
// given probability, moved onto the cheapest compatible stack other than its
// own. Exactly one random draw per eligible mover regardless of outcome.
WopSolution create_mutant(const WopSolution& solution, const Instance& instance, double mutant_probability, Rng& rng,
                          MutantStats* stats = nullptr);

// Drops empty and infeasible candidates, deduplicates by canonical key
// keeping the first occurrence. stats.generated counts every input.
Population filter_population(const std::vector<std::optional<WopSolution>>& candidates, const Instance& instance);

struct QI4WOPConfig {
    SamplerConfig sampler;
    double mutant_probability = 0.5;
    std::uint64_t p2_seed = 0;
};

// Full pipeline: build the ground-placement model, sample N partials from the
// backend, complete + mutate each, filter the 2N candidates.
Population run_qi4wop(const Instance& instance, const QI4WOPConfig& config, SolverBackend& backend, int workers = 1);

// {"solutions": [...], "stats": {...}}
nlohmann::json population_to_json(const Population& population);

}  // namespace wop
