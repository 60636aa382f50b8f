#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "wop/baseline.hpp"

namespace wop {

// Knobs for the LX_IY_TZ instance generator.
struct InstanceSpec {
    std::int64_t num_locations = 1;
    std::int64_t num_items = 1;
    std::int64_t num_types = 1;
    Rat capacity_fill_ratio{13, 10};  // total capacity / total item area
    double shelf_fraction = 0.25;
    double stackable_fraction = 0.75;
    double shelf_allowed_fraction = 0.5;
    std::pair<std::int64_t, std::int64_t> height_range{2, 4};
    std::pair<std::int64_t, std::int64_t> area_range{1, 6};
    std::pair<std::int64_t, std::int64_t> base_time_range{1, 10};
    std::pair<std::int64_t, std::int64_t> level_time_range{1, 5};
    std::uint64_t seed = 0;
};

struct GeneratedInstance {
    Instance instance;
    WopSolution witness;  // feasibility certificate, stored alongside
};

// Deterministic per seed. The instance always passes validate_instance and
// admits at least one feasible solution; specs that cannot produce one within
// 100 resamples fail with "generator-infeasible".
GeneratedInstance generate_instance(const InstanceSpec& spec);

enum class Method { Classical, QI4WOP };

std::string method_name(Method method);

struct BenchConfig {
    QI4WOPConfig qi;
    std::string backend = "anneal";
    Millis classical_budget_ms = 30000;
    std::optional<std::int64_t> classical_target;
    std::uint64_t base_seed = 1;
    int workers = 1;
};

struct Phase1Run {
    std::string instance;
    std::string method;
    int run = 0;
    std::uint64_t seed = 0;
    std::int64_t num_solutions = 0;
    Millis runtime_ms = 0;
    bool ok = true;
    std::string error;
};

struct Phase1Row {
    std::string instance;
    std::string method;
    std::int64_t runs = 0;
    double mean_sols = 0.0;
    double mean_runtime_s = 0.0;
    bool failed = false;
};

struct Phase1Report {
    std::vector<Phase1Run> per_run;  // the persisted log; rows derive from it
    std::vector<Phase1Row> rows;
};

// Seeded population-count comparison: `runs` executions of every
// (instance, method) cell, averaging solution counts and wall seconds.
Phase1Report run_phase1(const std::vector<Instance>& instances, const std::vector<Method>& methods, int runs,
                        const BenchConfig& config);

struct Phase2RunRecord {
    int run = 0;
    std::uint64_t seed = 0;
    std::string outcome;  // win | loss | tie | skipped
    std::string error;    // set when skipped
    std::int64_t init_classical = 0;
    std::int64_t init_hybrid = 0;
    Rat score_classical{0};
    Rat score_hybrid{0};
};

struct Phase2Report {
    std::int64_t runs = 0;
    std::int64_t wins = 0;    // hybrid strictly better
    std::int64_t losses = 0;
    std::int64_t ties = 0;
    std::int64_t skipped = 0;
    Rat win_rate{0};
    std::vector<Phase2RunRecord> per_run;
};

// Paired-seed quality comparison: per run, the hybrid PoC first, then the
// classical PoC with target_init_count equalized to the hybrid's population
// size. A win is a strictly smaller final scalarized score.
Phase2Report run_phase2(const Instance& instance, int runs, const PocConfig& poc_config, const BenchConfig& config);

nlohmann::json phase1_report_to_json(const Phase1Report& report);
std::string phase1_report_to_csv(const Phase1Report& report);
std::string phase1_runs_to_ndjson(const Phase1Report& report);
nlohmann::json phase2_report_to_json(const Phase2Report& report);
std::string phase2_report_to_csv(const Phase2Report& report);

}  // namespace wop
