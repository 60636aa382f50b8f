#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "wop/rng.hpp"
#include "wop/solvers.hpp"

#include "subwop_view.hpp"

namespace wop {

namespace {

// One annealing restart over per-item categorical states. Option encoding per
// item: 0..k-1 pick choice, k means unplaced (absent for must-place items).
class Restart {
public:
    Restart(const SubwopView& view, double penalty, double t0, double cooling, std::int64_t proposals)
        : view_(view), penalty_(penalty), t0_(t0), cooling_(cooling), proposals_(proposals) {
        for (std::size_t i = 0; i < view.items.size(); ++i) {
            if (option_count(i) >= 2) proposable_.push_back(i);
        }
    }

    std::vector<int> run(std::uint64_t seed) {
        Rng rng(seed);
        std::vector<int> state(view_.items.size());
        for (std::size_t i = 0; i < view_.items.size(); ++i) {
            std::size_t m = option_count(i);
            state[i] = m == 0 ? -1 : decode(i, bounded(rng, m));
        }
        if (proposable_.empty()) return state;

        std::vector<std::int64_t> load(view_.locations.size(), 0);
        double energy = base_energy(state, load);
        std::vector<int> best_state = state;
        double best_energy = energy;

        double temperature = t0_;
        const std::int64_t pass = static_cast<std::int64_t>(proposable_.size());
        for (std::int64_t step = 0; step < proposals_; ++step) {
            std::size_t i = proposable_[bounded(rng, proposable_.size())];
            std::size_t m = option_count(i);
            std::size_t cur = encode(i, state[i]);
            std::size_t pick = bounded(rng, m - 1);
            if (pick >= cur) ++pick;
            int next = decode(i, pick);

            double delta = move_delta(i, state[i], next, load);
            if (delta <= 0.0 || uniform01(rng) < std::exp(-delta / temperature)) {
                apply_move(i, state[i], next, load);
                state[i] = next;
                energy += delta;
                if (energy < best_energy) {
                    best_energy = energy;
                    best_state = state;
                }
            }
            if ((step + 1) % pass == 0) temperature *= cooling_;
        }
        return best_state;
    }

private:
    std::size_t option_count(std::size_t i) const {
        const auto& item = view_.items[i];
        return item.choices.size() + (item.must_place ? 0 : 1);
    }
    // option index <-> state value (-1 = unplaced)
    int decode(std::size_t i, std::size_t option) const {
        return option < view_.items[i].choices.size() ? static_cast<int>(option) : -1;
    }
    std::size_t encode(std::size_t i, int state) const {
        return state >= 0 ? static_cast<std::size_t>(state) : view_.items[i].choices.size();
    }

    static double overflow(std::int64_t load, std::int64_t cap) {
        return load > cap ? static_cast<double>(load - cap) : 0.0;
    }

    double base_energy(const std::vector<int>& state, std::vector<std::int64_t>& load) const {
        std::int64_t placed = 0;
        double unmet = 0.0;
        for (std::size_t i = 0; i < state.size(); ++i) {
            if (state[i] >= 0) {
                const auto& ch = view_.items[i].choices[static_cast<std::size_t>(state[i])];
                load[ch.loc_idx] += ch.area;
                ++placed;
            } else if (view_.items[i].must_place) {
                unmet += 1.0;
            }
        }
        double cap_violation = 0.0;
        for (std::size_t l = 0; l < load.size(); ++l) cap_violation += overflow(load[l], view_.capacities[l]);
        return -static_cast<double>(placed) + penalty_ * (cap_violation + unmet);
    }

    double move_delta(std::size_t i, int from, int to, const std::vector<std::int64_t>& load) const {
        double delta = 0.0;
        if ((from >= 0) != (to >= 0)) delta += from >= 0 ? 1.0 : -1.0;  // placed count term
        if (from >= 0) {
            const auto& ch = view_.items[i].choices[static_cast<std::size_t>(from)];
            std::int64_t cap = view_.capacities[ch.loc_idx];
            delta += penalty_ * (overflow(load[ch.loc_idx] - ch.area, cap) - overflow(load[ch.loc_idx], cap));
        }
        if (to >= 0) {
            const auto& ch = view_.items[i].choices[static_cast<std::size_t>(to)];
            std::int64_t base = load[ch.loc_idx];
            if (from >= 0 && view_.items[i].choices[static_cast<std::size_t>(from)].loc_idx == ch.loc_idx)
                base -= view_.items[i].choices[static_cast<std::size_t>(from)].area;
            std::int64_t cap = view_.capacities[ch.loc_idx];
            delta += penalty_ * (overflow(base + ch.area, cap) - overflow(base, cap));
        }
        if (view_.items[i].must_place) {
            if (from < 0 && to >= 0) delta -= penalty_;
            if (from >= 0 && to < 0) delta += penalty_;
        }
        return delta;
    }

    void apply_move(std::size_t i, int from, int to, std::vector<std::int64_t>& load) const {
        if (from >= 0) {
            const auto& ch = view_.items[i].choices[static_cast<std::size_t>(from)];
            load[ch.loc_idx] -= ch.area;
        }
        if (to >= 0) {
            const auto& ch = view_.items[i].choices[static_cast<std::size_t>(to)];
            load[ch.loc_idx] += ch.area;
        }
    }

    const SubwopView& view_;
    double penalty_;
    double t0_;
    double cooling_;
    std::int64_t proposals_;
    std::vector<std::size_t> proposable_;
};

Assignment state_to_assignment(const CqmModel& model, const SubwopView& view, const std::vector<int>& state) {
    Assignment a;
    for (const Variable& v : model.variables) a[v.id] = Rat(0);
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (state[i] >= 0) a[view.items[i].choices[static_cast<std::size_t>(state[i])].var] = Rat(1);
    }
    return a;
}

}  // namespace

SampleSet sample_annealing(const CqmModel& model, const SamplerConfig& config, int workers) {
    auto start = std::chrono::steady_clock::now();
    if (config.num_samples < 1) throw Error("invalid-config", "num_samples must be >= 1");
    if (config.sa.cooling_factor <= 0.0 || config.sa.cooling_factor >= 1.0)
        throw Error("invalid-config", "cooling_factor must lie in (0,1)");
    if (config.sa.initial_temperature <= 0.0) throw Error("invalid-config", "initial_temperature must be positive");

    SubwopView view = SubwopView::from_model(model);
    const std::int64_t n_items = static_cast<std::int64_t>(view.items.size());
    const std::int64_t proposals = config.sa.sweeps_per_restart.value_or(200 * std::max<std::int64_t>(n_items, 1));
    if (proposals < 1) throw Error("invalid-config", "sweeps_per_restart must be >= 1");
    double penalty = config.sa.penalty_weight ? rat_to_double(*config.sa.penalty_weight)
                                              : 2.0 * static_cast<double>(std::max<std::int64_t>(view.max_area, 1));
    if (penalty <= 0.0) throw Error("invalid-config", "penalty_weight must be positive");

    Restart restart(view, penalty, config.sa.initial_temperature, config.sa.cooling_factor, proposals);

    const std::int64_t n = config.num_samples;
    std::vector<std::optional<std::vector<int>>> states(static_cast<std::size_t>(n));
    auto out_of_budget = [&]() {
        if (config.time_budget_ms <= 0) return false;
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        return elapsed.count() >= config.time_budget_ms;
    };

    bool truncated = false;
    if (workers <= 1) {
        for (std::int64_t r = 0; r < n; ++r) {
            if (out_of_budget()) {
                truncated = true;
                break;
            }
            states[static_cast<std::size_t>(r)] = restart.run(config.seed ^ static_cast<std::uint64_t>(r));
        }
    } else {
        std::atomic<std::int64_t> next{0};
        std::atomic<bool> stop{false};
        auto worker = [&]() {
            for (;;) {
                std::int64_t r = next.fetch_add(1);
                if (r >= n) return;
                if (stop.load() || out_of_budget()) {
                    stop.store(true);
                    return;
                }
                states[static_cast<std::size_t>(r)] = restart.run(config.seed ^ static_cast<std::uint64_t>(r));
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
        truncated = stop.load();
    }

    SampleSet set;
    set.backend_name = "anneal";
    set.truncated = truncated;
    for (const auto& state : states) {  // restart-index order, schedule independent
        if (!state) continue;
        Assignment a = state_to_assignment(model, view, *state);
        Evaluation eval = evaluate(model, a);
        set.samples.push_back({std::move(a), std::move(eval)});
    }
    set.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                           .count() +
                       config.queue_latency_offset_ms;
    return set;
}

SampleSet AnnealBackend::sample(const CqmModel& model, const SamplerConfig& config) {
    return sample_annealing(model, config, workers_);
}

}  // namespace wop
