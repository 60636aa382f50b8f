#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wop/cqm.hpp"
#include "wop/rational.hpp"

namespace wop {

using Millis = std::int64_t;

struct SaParams {
    double initial_temperature = 2.0;
    double cooling_factor = 0.95;  // applied once per pass of proposals
    // Elementary single-item proposals per restart; defaults to 200 * I.
    std::optional<std::int64_t> sweeps_per_restart;
    // Penalty on constraint violations; defaults to 2 * (max item area).
    std::optional<Rat> penalty_weight;
};

struct SamplerConfig {
    std::int64_t num_samples = 50;  // N, one sample per restart
    Millis time_budget_ms = 0;      // 0 = unlimited
    std::uint64_t seed = 0;
    SaParams sa;
    // Stand-in for remote queue latency; added to reported wall time.
    Millis queue_latency_offset_ms = 0;
};

struct Sample {
    Assignment assignment;
    Evaluation evaluation;
};

struct SampleSet {
    std::vector<Sample> samples;
    std::string backend_name;
    Millis wall_time_ms = 0;
    bool infeasible = false;  // set when provably no feasible assignment exists
    bool truncated = false;   // set when the time budget cut restarts short

    // Best feasible objective, if any sample is feasible.
    std::optional<Rat> best_feasible_objective() const;
};

struct SolveLimits {
    std::int64_t max_variables = 24;
    std::int64_t max_nodes = 10'000'000;
    std::int64_t max_solutions = 0;  // 0 = return every optimum
};

// Exhaustive depth-first search over per-item location choices with capacity
// pruning. Returns all optimal feasible assignments, ordered lexicographically
// by their 0/1 encoding over the model's variable order.
SampleSet solve_exact(const CqmModel& model, const SolveLimits& limits = {});

// Population sampler: N independently seeded annealing restarts (restart r is
// seeded with seed XOR r), each walking per-item categorical states with
// Metropolis acceptance and geometric cooling. Every sample carries a fresh
// exact Evaluation; only zero-violation samples count as feasible.
SampleSet sample_annealing(const CqmModel& model, const SamplerConfig& config, int workers = 1);

// File-drop adapter for an external CQM service. Export writes the model JSON;
// import parses {samples: [{assignment, objective}]} and re-evaluates each
// assignment locally, keeping the local value when the recorded one disagrees.
void export_for_remote(const CqmModel& model, const std::filesystem::path& path);
SampleSet import_sampleset(const std::filesystem::path& path, const CqmModel& model);

nlohmann::json sampleset_to_json(const SampleSet& set);

class SolverBackend {
public:
    virtual ~SolverBackend() = default;
    virtual std::string name() const = 0;
    virtual SampleSet sample(const CqmModel& model, const SamplerConfig& config) = 0;
};

class ExactBackend : public SolverBackend {
public:
    explicit ExactBackend(SolveLimits limits = {}) : limits_(limits) {}
    std::string name() const override { return "exact"; }
    SampleSet sample(const CqmModel& model, const SamplerConfig& config) override;

private:
    SolveLimits limits_;
};

class AnnealBackend : public SolverBackend {
public:
    explicit AnnealBackend(int workers = 1) : workers_(workers) {}
    std::string name() const override { return "anneal"; }
    SampleSet sample(const CqmModel& model, const SamplerConfig& config) override;

private:
    int workers_;
};

// Exchanges model.json / samples.json through a drop directory (argument or
// WOP_REMOTE_DIR). Sampling fails with "remote-pending" until the external
// side has produced the samples file.
class RemoteBackend : public SolverBackend {
public:
    explicit RemoteBackend(std::filesystem::path dir = {});
    std::string name() const override { return "remote"; }
    SampleSet sample(const CqmModel& model, const SamplerConfig& config) override;

    const std::filesystem::path& directory() const { return dir_; }

private:
    std::filesystem::path dir_;
};

std::unique_ptr<SolverBackend> make_backend(const std::string& name, int workers = 1);

}  // namespace wop
