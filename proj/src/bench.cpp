#include "wop/bench.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <sstream>

namespace wop {

using nlohmann::json;

namespace {

std::int64_t uniform_range(Rng& rng, std::pair<std::int64_t, std::int64_t> range) {
    if (range.second < range.first) throw Error("invalid-config", "empty range");
    return range.first + static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(range.second - range.first + 1)));
}

std::string padded(const char* prefix, std::int64_t value, std::size_t width) {
    std::string digits = std::to_string(value);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return prefix + digits;
}

Instance draw_instance(const InstanceSpec& spec, Rng& rng) {
    Instance inst;
    inst.name = "L" + std::to_string(spec.num_locations) + "_I" + std::to_string(spec.num_items) + "_T" +
                std::to_string(spec.num_types);

    const std::size_t type_width = std::to_string(spec.num_types - 1).size();
    for (std::int64_t z = 0; z < spec.num_types; ++z) {
        ItemType t;
        t.id = padded("t", z, type_width);
        t.area = uniform_range(rng, spec.area_range);
        bool stackable = uniform01(rng) < spec.stackable_fraction && spec.height_range.second >= 2;
        t.max_stack_height = stackable ? uniform_range(rng, {std::max<std::int64_t>(2, spec.height_range.first),
                                                             spec.height_range.second})
                                       : 1;
        t.shelf_allowed = uniform01(rng) < spec.shelf_allowed_fraction;
        inst.item_types.push_back(std::move(t));
    }

    // round-robin type assignment, then shuffled
    std::vector<std::size_t> assigned(static_cast<std::size_t>(spec.num_items));
    for (std::size_t y = 0; y < assigned.size(); ++y) assigned[y] = y % static_cast<std::size_t>(spec.num_types);
    shuffle_vec(assigned, rng);
    const std::size_t item_width = std::to_string(spec.num_items - 1).size();
    for (std::int64_t y = 0; y < spec.num_items; ++y) {
        inst.items.push_back({padded("i", y, item_width), inst.item_types[assigned[static_cast<std::size_t>(y)]].id});
    }

    bool need_floor = false;
    for (const ItemType& t : inst.item_types) {
        if (!t.shelf_allowed) need_floor = true;
    }
    const std::size_t loc_width = std::to_string(spec.num_locations - 1).size();
    for (std::int64_t x = 0; x < spec.num_locations; ++x) {
        Location l;
        l.id = padded("loc", x, loc_width);
        l.kind = uniform01(rng) < spec.shelf_fraction ? LocationKind::Shelf : LocationKind::Floor;
        l.base_place_time = uniform_range(rng, spec.base_time_range);
        l.per_level_time = uniform_range(rng, spec.level_time_range);
        inst.locations.push_back(std::move(l));
    }
    if (need_floor) {
        bool has_floor = false;
        for (const Location& l : inst.locations) has_floor |= l.kind == LocationKind::Floor;
        if (!has_floor) inst.locations.front().kind = LocationKind::Floor;
    }

    // capacities sum to round(fill_ratio * total item area), spread by random
    // weights with largest-remainder rounding, one unit minimum each
    std::int64_t total_area = 0;
    InstanceIndex index(inst);
    for (const Item& item : inst.items) total_area += index.type_of(item).area;
    Rat target = spec.capacity_fill_ratio * Rat(total_area) + Rat(1, 2);
    std::int64_t total_capacity = target.numerator() / target.denominator();  // floor, operands positive
    if (total_capacity < spec.num_locations) throw Error("generator-infeasible", "fill ratio leaves no capacity");

    std::vector<double> weights(static_cast<std::size_t>(spec.num_locations));
    double weight_sum = 0.0;
    for (double& w : weights) {
        w = uniform01(rng) + 1e-9;
        weight_sum += w;
    }
    std::int64_t spread = total_capacity - spec.num_locations;
    std::vector<std::pair<double, std::size_t>> remainders;
    std::int64_t given = 0;
    for (std::size_t x = 0; x < weights.size(); ++x) {
        double exact = spread * weights[x] / weight_sum;
        std::int64_t base = static_cast<std::int64_t>(exact);
        inst.locations[x].capacity = 1 + base;
        given += base;
        remainders.emplace_back(exact - static_cast<double>(base), x);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (std::int64_t extra = 0; extra < spread - given; ++extra) {
        inst.locations[remainders[static_cast<std::size_t>(extra) % remainders.size()].second].capacity += 1;
    }
    return inst;
}

// First-fit witness builder: non-stackable items first, then stackable types
// with full piles before fresh footprints.
std::optional<WopSolution> greedy_witness(const Instance& instance) {
    InstanceIndex index(instance);
    struct Pile {
        std::size_t loc;
        std::int64_t slot;
        std::int64_t height;
    };
    std::vector<std::int64_t> load(instance.locations.size(), 0);
    std::vector<std::int64_t> slots_used(instance.locations.size(), 0);
    std::map<std::string, std::vector<Pile>> piles;  // per type

    std::vector<const Item*> order;
    for (const Item& item : instance.items) order.push_back(&item);
    std::stable_sort(order.begin(), order.end(), [&](const Item* a, const Item* b) {
        const ItemType& ta = index.type_of(*a);
        const ItemType& tb = index.type_of(*b);
        bool sa = ta.max_stack_height > 1, sb = tb.max_stack_height > 1;
        if (sa != sb) return !sa;  // non-stackable first
        if (ta.area != tb.area) return ta.area > tb.area;
        return ta.id < tb.id;
    });

    WopSolution solution;
    for (const Item* item : order) {
        const ItemType& type = index.type_of(*item);
        Pile* open = nullptr;
        for (Pile& p : piles[type.id]) {
            if (p.height < type.max_stack_height) {
                open = &p;
                break;
            }
        }
        if (open) {
            solution.assignments[item->id] = {instance.locations[open->loc].id, open->slot, open->height};
            ++open->height;
            continue;
        }
        // best-fit fresh footprint
        std::size_t best_loc = instance.locations.size();
        std::int64_t best_resid = 0;
        for (std::size_t l = 0; l < instance.locations.size(); ++l) {
            if (!eligible(type, instance.locations[l])) continue;
            std::int64_t resid = instance.locations[l].capacity - load[l] - type.area;
            if (resid < 0) continue;
            if (best_loc == instance.locations.size() || resid < best_resid) {
                best_loc = l;
                best_resid = resid;
            }
        }
        if (best_loc == instance.locations.size()) return std::nullopt;
        std::int64_t slot = slots_used[best_loc]++;
        load[best_loc] += type.area;
        solution.assignments[item->id] = {instance.locations[best_loc].id, slot, 0};
        piles[type.id].push_back({best_loc, slot, 1});
    }
    return solution;
}

}  // namespace

GeneratedInstance generate_instance(const InstanceSpec& spec) {
    if (spec.num_locations < 1 || spec.num_items < 1 || spec.num_types < 1)
        throw Error("invalid-config", "instance spec requires X, Y, Z >= 1");
    if (spec.num_types > spec.num_items) throw Error("invalid-config", "more types than items");
    if (spec.capacity_fill_ratio <= Rat(0)) throw Error("invalid-config", "capacity_fill_ratio must be positive");
    for (double f : {spec.shelf_fraction, spec.stackable_fraction, spec.shelf_allowed_fraction}) {
        if (f < 0.0 || f > 1.0) throw Error("invalid-config", "fractions must lie in [0,1]");
    }
    if (spec.area_range.first < 1 || spec.area_range.second < spec.area_range.first)
        throw Error("invalid-config", "area_range must be a non-empty range of positive integers");
    if (spec.height_range.first < 1 || spec.height_range.second < spec.height_range.first)
        throw Error("invalid-config", "height_range must be a non-empty range of integers >= 1");
    if (spec.base_time_range.first < 0 || spec.base_time_range.second < spec.base_time_range.first ||
        spec.level_time_range.first < 0 || spec.level_time_range.second < spec.level_time_range.first)
        throw Error("invalid-config", "time ranges must be non-empty and non-negative");

    for (int round = 0; round < 100; ++round) {
        Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(round)));
        Instance inst;
        try {
            inst = draw_instance(spec, rng);
        } catch (const Error& e) {
            if (e.code() == "generator-infeasible") continue;
            throw;
        }
        FeasibilityReport valid = validate_instance(inst);
        if (!valid.feasible) continue;

        std::optional<WopSolution> witness = greedy_witness(inst);
        if (!witness) {
            for (int tries = 0; tries < 10 && !witness; ++tries) witness = random_feasible_solution(inst, rng, 10);
        }
        if (witness && is_feasible(*witness, inst).feasible) return {std::move(inst), std::move(*witness)};
    }
    throw Error("generator-infeasible", "no feasible-admitting instance after 100 resamples");
}

std::string method_name(Method method) { return method == Method::Classical ? "classical" : "qi4wop"; }

Phase1Report run_phase1(const std::vector<Instance>& instances, const std::vector<Method>& methods, int runs,
                        const BenchConfig& config) {
    if (runs < 1) throw Error("invalid-config", "runs must be >= 1");
    std::unique_ptr<SolverBackend> backend;
    Phase1Report report;
    for (const Instance& instance : instances) {
        for (Method method : methods) {
            double sols_sum = 0.0;
            double secs_sum = 0.0;
            std::int64_t ok_runs = 0;
            bool failed = false;
            for (int r = 0; r < runs; ++r) {
                Phase1Run record;
                record.instance = instance.name;
                record.method = method_name(method);
                record.run = r;
                record.seed = derive_seed(config.base_seed, static_cast<std::uint64_t>(r));
                auto t0 = std::chrono::steady_clock::now();
                try {
                    Population population;
                    if (method == Method::Classical) {
                        Rng rng(record.seed);
                        population = classical_initialization(instance, config.classical_budget_ms, rng,
                                                              config.classical_target);
                    } else {
                        if (!backend) backend = make_backend(config.backend, config.workers);
                        QI4WOPConfig qi = config.qi;
                        qi.sampler.seed = record.seed;
                        qi.p2_seed = derive_seed(record.seed, 7);
                        population = run_qi4wop(instance, qi, *backend, config.workers);
                    }
                    record.num_solutions = static_cast<std::int64_t>(population.solutions.size());
                } catch (const Error& e) {
                    record.ok = false;
                    record.error = e.what();
                    failed = true;
                }
                record.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count();
                if (record.ok) {
                    sols_sum += static_cast<double>(record.num_solutions);
                    secs_sum += static_cast<double>(record.runtime_ms) / 1000.0;
                    ++ok_runs;
                }
                report.per_run.push_back(std::move(record));
            }
            Phase1Row row;
            row.instance = instance.name;
            row.method = method_name(method);
            row.runs = runs;
            row.failed = failed;
            row.mean_sols = ok_runs ? sols_sum / static_cast<double>(ok_runs) : 0.0;
            row.mean_runtime_s = ok_runs ? secs_sum / static_cast<double>(ok_runs) : 0.0;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

Phase2Report run_phase2(const Instance& instance, int runs, const PocConfig& poc_config, const BenchConfig& config) {
    if (runs < 1) throw Error("invalid-config", "runs must be >= 1");
    std::unique_ptr<SolverBackend> backend = make_backend(config.backend, config.workers);
    Phase2Report report;
    report.runs = runs;
    for (int r = 0; r < runs; ++r) {
        Phase2RunRecord record;
        record.run = r;
        record.seed = derive_seed(config.base_seed, static_cast<std::uint64_t>(r));
        try {
            PocConfig hybrid_cfg = poc_config;
            hybrid_cfg.init_mode = InitMode::QI4WOP;
            hybrid_cfg.seed = record.seed;
            RunResult hybrid = run_poc(instance, hybrid_cfg, backend.get(), config.workers);

            // classical init runs until it matches the hybrid population size
            PocConfig classical_cfg = poc_config;
            classical_cfg.init_mode = InitMode::Classical;
            classical_cfg.seed = record.seed;
            classical_cfg.target_init_count = hybrid.init_population_size;
            RunResult classical = run_poc(instance, classical_cfg, nullptr, config.workers);

            record.init_hybrid = hybrid.init_population_size;
            record.init_classical = classical.init_population_size;
            record.score_hybrid = hybrid.best_final.score;
            record.score_classical = classical.best_final.score;
            if (record.score_hybrid < record.score_classical) {
                record.outcome = "win";
                ++report.wins;
            } else if (record.score_hybrid > record.score_classical) {
                record.outcome = "loss";
                ++report.losses;
            } else {
                record.outcome = "tie";
                ++report.ties;
            }
        } catch (const Error& e) {
            record.outcome = "skipped";
            record.error = e.what();
            ++report.skipped;
        }
        report.per_run.push_back(std::move(record));
    }
    report.win_rate = Rat(report.wins, runs);
    return report;
}

json phase1_report_to_json(const Phase1Report& report) {
    json rows = json::array();
    for (const Phase1Row& row : report.rows) {
        rows.push_back({{"instance", row.instance},
                        {"method", row.method},
                        {"runs", row.runs},
                        {"mean_sols", row.mean_sols},
                        {"mean_runtime_s", row.mean_runtime_s},
                        {"failed", row.failed}});
    }
    return json{{"rows", rows}};
}

std::string phase1_report_to_csv(const Phase1Report& report) {
    std::ostringstream out;
    out << "instance,method,runs,mean_sols,mean_runtime_s\n";
    for (const Phase1Row& row : report.rows) {
        out << row.instance << ',' << row.method << ',' << row.runs << ',' << json(row.mean_sols).dump() << ','
            << json(row.mean_runtime_s).dump() << '\n';
    }
    return out.str();
}

std::string phase1_runs_to_ndjson(const Phase1Report& report) {
    std::ostringstream out;
    for (const Phase1Run& run : report.per_run) {
        json record = {{"instance", run.instance}, {"method", run.method},   {"run", run.run},
                       {"seed", run.seed},         {"num_solutions", run.num_solutions},
                       {"runtime_ms", run.runtime_ms}, {"ok", run.ok}};
        if (!run.ok) record["error"] = run.error;
        out << record.dump() << '\n';
    }
    return out.str();
}

json phase2_report_to_json(const Phase2Report& report) {
    json per_run = json::array();
    for (const Phase2RunRecord& r : report.per_run) {
        json record = {{"run", r.run},
                       {"seed", r.seed},
                       {"outcome", r.outcome},
                       {"init_classical", r.init_classical},
                       {"init_hybrid", r.init_hybrid},
                       {"score_classical", rat_to_json(r.score_classical)},
                       {"score_hybrid", rat_to_json(r.score_hybrid)}};
        if (!r.error.empty()) record["error"] = r.error;
        per_run.push_back(std::move(record));
    }
    return json{{"runs", report.runs},       {"wins_qi4wop", report.wins}, {"losses", report.losses},
                {"ties", report.ties},       {"skipped", report.skipped},  {"win_rate", rat_to_json(report.win_rate)},
                {"per_run", per_run}};
}

std::string phase2_report_to_csv(const Phase2Report& report) {
    std::ostringstream out;
    out << "run,seed,outcome,init_classical,init_hybrid,score_classical,score_hybrid\n";
    for (const Phase2RunRecord& r : report.per_run) {
        out << r.run << ',' << r.seed << ',' << r.outcome << ',' << r.init_classical << ',' << r.init_hybrid << ','
            << rat_to_string(r.score_classical) << ',' << rat_to_string(r.score_hybrid) << '\n';
    }
    return out.str();
}

}  // namespace wop
