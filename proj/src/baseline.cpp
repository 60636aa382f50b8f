#include "wop/baseline.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace wop {

namespace {

struct Stack {
    std::size_t type_idx;
    std::vector<std::size_t> item_idx;  // by level, bottom first
};

struct LocState {
    std::vector<Stack> stacks;
    std::int64_t load = 0;  // ground area in use
};

// Index-based working copy of the instance for the construction heuristics.
struct Workspace {
    const Instance& instance;
    std::vector<std::size_t> item_type;  // item index -> type index

    explicit Workspace(const Instance& inst) : instance(inst) {
        std::map<std::string, std::size_t> type_pos;
        for (std::size_t t = 0; t < inst.item_types.size(); ++t) type_pos[inst.item_types[t].id] = t;
        item_type.reserve(inst.items.size());
        for (const Item& item : inst.items) item_type.push_back(type_pos.at(item.type_id));
    }

    const ItemType& type_of(std::size_t item) const { return instance.item_types[item_type[item]]; }

    WopSolution to_solution(const std::vector<LocState>& locs) const {
        WopSolution solution;
        for (std::size_t l = 0; l < locs.size(); ++l) {
            const std::string& loc_id = instance.locations[l].id;
            for (std::size_t s = 0; s < locs[l].stacks.size(); ++s) {
                for (std::size_t level = 0; level < locs[l].stacks[s].item_idx.size(); ++level) {
                    solution.assignments[instance.items[locs[l].stacks[s].item_idx[level]].id] = {
                        loc_id, static_cast<std::int64_t>(s), static_cast<std::int64_t>(level)};
                }
            }
        }
        return solution;
    }
};

}  // namespace

std::optional<WopSolution> random_feasible_solution(const Instance& instance, Rng& rng, int max_attempts) {
    Workspace ws(instance);
    std::vector<std::size_t> order(instance.items.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        shuffle_vec(order, rng);
        std::vector<LocState> locs(instance.locations.size());
        bool dead_end = false;
        for (std::size_t item : order) {
            const ItemType& type = ws.type_of(item);
            // feasible slots: fresh footprints first, then open stack tops
            std::vector<std::pair<std::size_t, std::int64_t>> slots;  // (loc, stack or -1)
            for (std::size_t l = 0; l < locs.size(); ++l) {
                if (!eligible(type, instance.locations[l])) continue;
                if (locs[l].load + type.area <= instance.locations[l].capacity) slots.emplace_back(l, -1);
            }
            for (std::size_t l = 0; l < locs.size(); ++l) {
                for (std::size_t s = 0; s < locs[l].stacks.size(); ++s) {
                    const Stack& st = locs[l].stacks[s];
                    if (instance.item_types[st.type_idx].id != type.id) continue;
                    if (static_cast<std::int64_t>(st.item_idx.size()) < type.max_stack_height)
                        slots.emplace_back(l, static_cast<std::int64_t>(s));
                }
            }
            if (slots.empty()) {
                dead_end = true;
                break;
            }
            auto [l, s] = slots[bounded(rng, slots.size())];
            if (s < 0) {
                locs[l].stacks.push_back({ws.item_type[item], {item}});
                locs[l].load += type.area;
            } else {
                locs[l].stacks[static_cast<std::size_t>(s)].item_idx.push_back(item);
            }
        }
        if (!dead_end) return ws.to_solution(locs);
    }
    return std::nullopt;
}

Population classical_initialization(const Instance& instance, Millis budget_ms, Rng& rng,
                                    std::optional<std::int64_t> target_count) {
    auto start = std::chrono::steady_clock::now();
    PopulationBuilder builder(instance);
    for (;;) {
        if (target_count && builder.size() >= *target_count) break;
        auto elapsed =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        if (elapsed >= budget_ms) break;
        builder.add(random_feasible_solution(instance, rng));
    }
    return builder.take();
}

namespace {

struct Move {
    enum Kind { RelocateStack, RestackTop, UnstackTop } kind;
    std::size_t loc_a, stack_a;  // source
    std::size_t loc_b, stack_b;  // target (stack_b unused for fresh footprints)
};

class SearchState {
public:
    SearchState(const WopSolution& solution, const Instance& instance, const Weights& weights)
        : ws_(instance), weights_(weights), locs_(instance.locations.size()) {
        std::map<std::string, std::size_t> loc_pos, item_pos;
        for (std::size_t l = 0; l < instance.locations.size(); ++l) loc_pos[instance.locations[l].id] = l;
        for (std::size_t i = 0; i < instance.items.size(); ++i) item_pos[instance.items[i].id] = i;

        std::map<std::pair<std::size_t, std::int64_t>, std::vector<std::pair<std::int64_t, std::size_t>>> grouped;
        for (const auto& [item_id, pl] : solution.assignments) {
            grouped[{loc_pos.at(pl.location_id), pl.stack_slot}].emplace_back(pl.level, item_pos.at(item_id));
        }
        for (auto& [key, members] : grouped) {
            std::sort(members.begin(), members.end());
            Stack st;
            st.type_idx = ws_.item_type[members.front().second];
            for (const auto& [level, item] : members) st.item_idx.push_back(item);
            locs_[key.first].load += instance.item_types[st.type_idx].area;
            locs_[key.first].stacks.push_back(std::move(st));
        }
        o1_ = 0;
        o2_ = 0;
        for (std::size_t l = 0; l < locs_.size(); ++l) {
            const Location& loc = instance.locations[l];
            for (const Stack& st : locs_[l].stacks) {
                o2_ += instance.item_types[st.type_idx].area;
                for (std::size_t level = 0; level < st.item_idx.size(); ++level)
                    o1_ += loc.base_place_time + static_cast<std::int64_t>(level) * loc.per_level_time;
            }
        }
    }

    Rat score() const { return scalarize(o1_, o2_, weights_); }

    std::vector<Move> enumerate_moves() const {
        const auto& instance = ws_.instance;
        std::vector<Move> moves;
        for (std::size_t a = 0; a < locs_.size(); ++a) {
            for (std::size_t s = 0; s < locs_[a].stacks.size(); ++s) {
                const Stack& st = locs_[a].stacks[s];
                const ItemType& type = instance.item_types[st.type_idx];
                for (std::size_t b = 0; b < locs_.size(); ++b) {
                    bool fits = eligible(type, instance.locations[b]) &&
                                locs_[b].load + type.area <= instance.locations[b].capacity;
                    if (b != a && fits) moves.push_back({Move::RelocateStack, a, s, b, 0});
                    // fresh footprint for the top item, only useful for real stacks
                    if (st.item_idx.size() >= 2 && fits) moves.push_back({Move::UnstackTop, a, s, b, 0});
                }
                for (std::size_t b = 0; b < locs_.size(); ++b) {
                    for (std::size_t t = 0; t < locs_[b].stacks.size(); ++t) {
                        if (a == b && s == t) continue;
                        const Stack& target = locs_[b].stacks[t];
                        if (target.type_idx != st.type_idx) continue;
                        if (static_cast<std::int64_t>(target.item_idx.size()) >= type.max_stack_height) continue;
                        moves.push_back({Move::RestackTop, a, s, b, t});
                    }
                }
            }
        }
        return moves;
    }

    // (delta_o1, delta_o2) of a move against the current state
    std::pair<std::int64_t, std::int64_t> move_delta(const Move& m) const {
        const auto& instance = ws_.instance;
        const Stack& st = locs_[m.loc_a].stacks[m.stack_a];
        const ItemType& type = instance.item_types[st.type_idx];
        const Location& from = instance.locations[m.loc_a];
        const Location& to = instance.locations[m.loc_b];
        const std::int64_t k = static_cast<std::int64_t>(st.item_idx.size()) - 1;  // top level
        switch (m.kind) {
            case Move::RelocateStack: {
                std::int64_t h = k + 1;
                std::int64_t d1 = h * (to.base_place_time - from.base_place_time) +
                                  (h * (h - 1) / 2) * (to.per_level_time - from.per_level_time);
                return {d1, 0};
            }
            case Move::RestackTop: {
                const Stack& target = locs_[m.loc_b].stacks[m.stack_b];
                std::int64_t land = static_cast<std::int64_t>(target.item_idx.size());
                std::int64_t d1 = (to.base_place_time + land * to.per_level_time) -
                                  (from.base_place_time + k * from.per_level_time);
                return {d1, k == 0 ? -type.area : 0};
            }
            case Move::UnstackTop: {
                std::int64_t d1 = to.base_place_time - (from.base_place_time + k * from.per_level_time);
                return {d1, type.area};
            }
        }
        return {0, 0};
    }

    void apply(const Move& m) {
        const auto& instance = ws_.instance;
        const std::size_t type_idx = locs_[m.loc_a].stacks[m.stack_a].type_idx;
        const std::int64_t area = instance.item_types[type_idx].area;
        auto [d1, d2] = move_delta(m);
        o1_ += d1;
        o2_ += d2;
        // index-based mutations only; pushes can reallocate the stack vectors
        switch (m.kind) {
            case Move::RelocateStack: {
                Stack moved = std::move(locs_[m.loc_a].stacks[m.stack_a]);
                locs_[m.loc_a].stacks.erase(locs_[m.loc_a].stacks.begin() + static_cast<std::ptrdiff_t>(m.stack_a));
                locs_[m.loc_a].load -= area;
                locs_[m.loc_b].stacks.push_back(std::move(moved));
                locs_[m.loc_b].load += area;
                break;
            }
            case Move::RestackTop: {
                std::size_t item = locs_[m.loc_a].stacks[m.stack_a].item_idx.back();
                locs_[m.loc_a].stacks[m.stack_a].item_idx.pop_back();
                bool emptied = locs_[m.loc_a].stacks[m.stack_a].item_idx.empty();
                locs_[m.loc_b].stacks[m.stack_b].item_idx.push_back(item);
                if (emptied) {
                    locs_[m.loc_a].stacks.erase(locs_[m.loc_a].stacks.begin() + static_cast<std::ptrdiff_t>(m.stack_a));
                    locs_[m.loc_a].load -= area;
                }
                break;
            }
            case Move::UnstackTop: {
                std::size_t item = locs_[m.loc_a].stacks[m.stack_a].item_idx.back();
                locs_[m.loc_a].stacks[m.stack_a].item_idx.pop_back();
                locs_[m.loc_b].stacks.push_back({type_idx, {item}});
                locs_[m.loc_b].load += area;
                break;
            }
        }
    }

    WopSolution to_solution() const { return ws_.to_solution(locs_); }

private:
    Workspace ws_;
    Weights weights_;
    std::vector<LocState> locs_;
    std::int64_t o1_ = 0;
    std::int64_t o2_ = 0;
};

}  // namespace

WopSolution local_search(const WopSolution& start, const Instance& instance, Millis budget_ms, const Weights& weights,
                         Rng& rng) {
    FeasibilityReport report = is_feasible(start, instance);
    if (!report.feasible)
        throw Error("infeasible-solution", report.violations.front().rule + ": " + report.violations.front().detail);

    auto t0 = std::chrono::steady_clock::now();
    SearchState state(start, instance, weights);
    Rat best = state.score();
    bool improved = true;
    while (improved) {
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
        if (elapsed.count() >= budget_ms) break;
        improved = false;
        std::vector<Move> moves = state.enumerate_moves();
        shuffle_vec(moves, rng);
        for (const Move& m : moves) {
            auto [d1, d2] = state.move_delta(m);
            Rat delta = weights.w1 * Rat(d1) + weights.w2 * Rat(d2);
            if (delta < Rat(0)) {
                state.apply(m);
                best += delta;
                improved = true;
                break;
            }
        }
    }
    return state.to_solution();
}

namespace {

ObjectiveValues measure(const WopSolution& solution, const Instance& instance, const Weights& weights) {
    ObjectiveValues v;
    v.o1 = objective_o1(solution, instance);
    v.o2 = objective_o2(solution, instance);
    v.score = scalarize(v.o1, v.o2, weights);
    return v;
}

}  // namespace

RunResult run_poc(const Instance& instance, const PocConfig& config, SolverBackend* backend, int workers) {
    FeasibilityReport valid = validate_instance(instance);
    if (!valid.feasible)
        throw Error("invalid-instance", valid.violations.front().rule + ": " + valid.violations.front().detail);

    auto t0 = std::chrono::steady_clock::now();
    Population population;
    if (config.init_mode == InitMode::Classical) {
        Rng rng(derive_seed(config.seed, 101));
        population = classical_initialization(instance, config.init_time_budget_ms, rng, config.target_init_count);
    } else {
        if (!backend) throw Error("invalid-config", "QI4WOP init mode needs a solver backend");
        QI4WOPConfig qi = config.qi;
        qi.sampler.seed = derive_seed(config.seed, 201);
        qi.p2_seed = derive_seed(config.seed, 202);
        population = run_qi4wop(instance, qi, *backend, workers);
    }
    Millis init_wall =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    if (population.solutions.empty()) throw Error("no-initial-solution", "initialization produced no feasible solution");

    // best of population: minimal score, canonical key breaks ties
    const WopSolution* best = nullptr;
    Rat best_score{0};
    std::string best_key;
    for (const WopSolution& s : population.solutions) {
        Rat score = scalarize(objective_o1(s, instance), objective_o2(s, instance), config.weights);
        std::string key = canonical_key(s);
        if (!best || score < best_score || (score == best_score && key < best_key)) {
            best = &s;
            best_score = score;
            best_key = key;
        }
    }

    Rng ls_rng(derive_seed(config.seed, 301));
    WopSolution final_solution = local_search(*best, instance, config.local_search_budget_ms, config.weights, ls_rng);

    RunResult result;
    result.init_population_size = static_cast<std::int64_t>(population.solutions.size());
    result.init_wall_ms = init_wall;
    result.best_initial = measure(*best, instance, config.weights);
    result.best_final = measure(final_solution, instance, config.weights);
    result.final_solution = std::move(final_solution);
    return result;
}

nlohmann::json run_result_to_json(const RunResult& result) {
    auto values = [](const ObjectiveValues& v) {
        return nlohmann::json{{"o1", v.o1}, {"o2", v.o2}, {"score", rat_to_json(v.score)}};
    };
    return nlohmann::json{{"init_population_size", result.init_population_size},
                          {"init_wall_ms", result.init_wall_ms},
                          {"best_initial", values(result.best_initial)},
                          {"best_final", values(result.best_final)},
                          {"final_solution", solution_to_json(result.final_solution)}};
}

}  // namespace wop
