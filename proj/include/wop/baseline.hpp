#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "wop/objectives.hpp"
#include "wop/postprocess.hpp"
#include "wop/rng.hpp"

namespace wop {

// Builds a complete solution item by item in random order; each item lands on
// a uniformly random feasible slot (fresh footprint or top of a compatible
// stack). Dead ends restart, up to max_attempts.
std::optional<WopSolution> random_feasible_solution(const Instance& instance, Rng& rng, int max_attempts = 50);

// Random-restart initialization: generates solutions until the budget runs
// out or target_count unique ones were found, filtering duplicates and
// infeasibles along the way.
Population classical_initialization(const Instance& instance, Millis budget_ms, Rng& rng,
                                    std::optional<std::int64_t> target_count = std::nullopt);

// First-improvement hill climbing over three feasibility-preserving moves:
// relocate a stack, restack a top item, unstack a top item to a fresh
// footprint. Scans moves in seeded random order, stops at a local optimum or
// when the budget runs out.
WopSolution local_search(const WopSolution& start, const Instance& instance, Millis budget_ms, const Weights& weights,
                         Rng& rng);

enum class InitMode { Classical, QI4WOP };

struct PocConfig {
    InitMode init_mode = InitMode::Classical;
    Millis init_time_budget_ms = 30000;
    std::optional<std::int64_t> target_init_count;
    Millis local_search_budget_ms = 10000;
    Weights weights;
    std::uint64_t seed = 0;
    QI4WOPConfig qi;  // used in QI4WOP mode, seeds overridden from `seed`
};

struct ObjectiveValues {
    std::int64_t o1 = 0;
    std::int64_t o2 = 0;
    Rat score{0};
};

struct RunResult {
    std::int64_t init_population_size = 0;
    Millis init_wall_ms = 0;
    ObjectiveValues best_initial;
    ObjectiveValues best_final;
    WopSolution final_solution;
};

// Initialization (classical or pipeline), best-of-population selection by
// scalarized score with canonical-key tie-break, then local search.
RunResult run_poc(const Instance& instance, const PocConfig& config, SolverBackend* backend = nullptr,
                  int workers = 1);

nlohmann::json run_result_to_json(const RunResult& result);

}  // namespace wop
