#include "wop/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "wop/bench.hpp"

namespace wop {

namespace {

using nlohmann::json;

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("io-error", "cannot write '" + path.string() + "'");
    out << text;
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("io-error", "cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("parse-error", std::string(e.what()) + " in '" + path.string() + "'");
    }
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& ctx) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) throw Error("parse-error", "unknown key '" + it.key() + "' in " + ctx);
    }
}

// Shared --config file: {"sampler": {...}, "mutant_probability", "p2_seed",
// "poc": {...}, "bench": {...}}; command-line flags override.
struct FileConfig {
    QI4WOPConfig qi;
    PocConfig poc;
    BenchConfig bench;
};

void apply_sampler(const json& j, SamplerConfig& sampler) {
    check_keys(j, {"num_samples", "time_budget_ms", "seed", "queue_latency_offset_ms", "sa"}, "sampler");
    if (j.contains("num_samples")) sampler.num_samples = j.at("num_samples").get<std::int64_t>();
    if (j.contains("time_budget_ms")) sampler.time_budget_ms = j.at("time_budget_ms").get<std::int64_t>();
    if (j.contains("seed")) sampler.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("queue_latency_offset_ms"))
        sampler.queue_latency_offset_ms = j.at("queue_latency_offset_ms").get<std::int64_t>();
    if (j.contains("sa")) {
        const json& sa = j.at("sa");
        check_keys(sa, {"initial_temperature", "cooling_factor", "sweeps_per_restart", "penalty_weight"}, "sa");
        if (sa.contains("initial_temperature")) sampler.sa.initial_temperature = sa.at("initial_temperature").get<double>();
        if (sa.contains("cooling_factor")) sampler.sa.cooling_factor = sa.at("cooling_factor").get<double>();
        if (sa.contains("sweeps_per_restart") && !sa.at("sweeps_per_restart").is_null())
            sampler.sa.sweeps_per_restart = sa.at("sweeps_per_restart").get<std::int64_t>();
        if (sa.contains("penalty_weight") && !sa.at("penalty_weight").is_null())
            sampler.sa.penalty_weight = rat_from_json(sa.at("penalty_weight"));
    }
}

FileConfig load_config(const std::string& path) {
    FileConfig config;
    if (path.empty()) return config;
    json j = load_json(path);
    check_keys(j, {"sampler", "mutant_probability", "p2_seed", "poc", "bench"}, "config");
    if (j.contains("sampler")) apply_sampler(j.at("sampler"), config.qi.sampler);
    if (j.contains("mutant_probability")) config.qi.mutant_probability = j.at("mutant_probability").get<double>();
    if (j.contains("p2_seed")) config.qi.p2_seed = j.at("p2_seed").get<std::uint64_t>();
    if (j.contains("poc")) {
        const json& p = j.at("poc");
        check_keys(p, {"init_time_budget_ms", "local_search_budget_ms", "target_init_count", "w1", "w2"}, "poc");
        if (p.contains("init_time_budget_ms")) config.poc.init_time_budget_ms = p.at("init_time_budget_ms").get<std::int64_t>();
        if (p.contains("local_search_budget_ms"))
            config.poc.local_search_budget_ms = p.at("local_search_budget_ms").get<std::int64_t>();
        if (p.contains("target_init_count") && !p.at("target_init_count").is_null())
            config.poc.target_init_count = p.at("target_init_count").get<std::int64_t>();
        if (p.contains("w1")) config.poc.weights.w1 = rat_from_json(p.at("w1"));
        if (p.contains("w2")) config.poc.weights.w2 = rat_from_json(p.at("w2"));
    }
    if (j.contains("bench")) {
        const json& b = j.at("bench");
        check_keys(b, {"classical_budget_ms", "classical_target"}, "bench");
        if (b.contains("classical_budget_ms")) config.bench.classical_budget_ms = b.at("classical_budget_ms").get<std::int64_t>();
        if (b.contains("classical_target") && !b.at("classical_target").is_null())
            config.bench.classical_target = b.at("classical_target").get<std::int64_t>();
    }
    config.poc.qi = config.qi;
    config.bench.qi = config.qi;
    return config;
}

int print_report(const FeasibilityReport& report, const std::string& subject) {
    if (report.feasible) {
        std::cout << subject << ": feasible\n";
        return 0;
    }
    std::cout << subject << ": infeasible (" << report.violations.size() << " violations)\n";
    for (const Violation& v : report.violations) std::cout << "  " << v.rule << ": " << v.detail << "\n";
    return 1;
}

}  // namespace

int cli(int argc, const char* const* argv) {
    CLI::App app{"warehouse placement optimization: models, solvers, benchmarks"};
    app.require_subcommand(0, 1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file")->configurable(false);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an LX_IY_TZ instance");
    InstanceSpec spec;
    std::string gen_out = "instance.json";
    double fill_ratio = 1.3;
    gen->add_option("--locations", spec.num_locations, "number of locations")->required();
    gen->add_option("--items", spec.num_items, "number of items")->required();
    gen->add_option("--types", spec.num_types, "number of item types")->required();
    gen->add_option("--seed", spec.seed, "generator seed");
    gen->add_option("--fill-ratio", fill_ratio, "total capacity / total item area");
    gen->add_option("--shelf-fraction", spec.shelf_fraction, "fraction of shelf locations");
    gen->add_option("--stackable-fraction", spec.stackable_fraction, "fraction of stackable types");
    gen->add_option("--shelf-allowed-fraction", spec.shelf_allowed_fraction, "fraction of shelf-enabled types");
    gen->add_option("--height-min", spec.height_range.first, "min stack height for stackable types");
    gen->add_option("--height-max", spec.height_range.second, "max stack height");
    gen->add_option("--area-min", spec.area_range.first, "min item area");
    gen->add_option("--area-max", spec.area_range.second, "max item area");
    gen->add_option("--out", gen_out, "output instance file");

    // validate
    auto* validate = app.add_subcommand("validate", "check an instance, optionally a solution");
    std::string validate_instance_path;
    std::string validate_solution_path;
    validate->add_option("instance", validate_instance_path, "instance file")->required();
    validate->add_option("--solution", validate_solution_path, "solution file to check against the instance");

    // solve
    auto* solve = app.add_subcommand("solve", "run the two-phase pipeline, emit a population");
    std::string solve_instance_path, solve_out, solve_backend = "anneal";
    std::optional<std::int64_t> solve_samples;
    std::optional<std::uint64_t> solve_seed;
    std::optional<double> solve_mutant_p;
    int solve_workers = 1;
    solve->add_option("--instance", solve_instance_path, "instance file")->required();
    solve->add_option("--backend", solve_backend, "exact | anneal | remote");
    solve->add_option("--samples", solve_samples, "population samples N");
    solve->add_option("--seed", solve_seed, "sampler seed");
    solve->add_option("--mutant-probability", solve_mutant_p, "stacking coin probability");
    solve->add_option("--workers", solve_workers, "parallel workers");
    solve->add_option("--out", solve_out, "population output file");

    // poc
    auto* poc = app.add_subcommand("poc", "initialization plus local search");
    std::string poc_instance_path, poc_out, poc_mode = "classical", poc_backend = "anneal";
    std::optional<std::uint64_t> poc_seed;
    std::optional<std::int64_t> poc_init_budget, poc_ls_budget, poc_target;
    std::optional<std::string> poc_w1, poc_w2;
    int poc_workers = 1;
    poc->add_option("--instance", poc_instance_path, "instance file")->required();
    poc->add_option("--mode", poc_mode, "classical | qi4wop");
    poc->add_option("--backend", poc_backend, "backend for qi4wop mode");
    poc->add_option("--seed", poc_seed, "run seed");
    poc->add_option("--init-budget-ms", poc_init_budget, "initialization budget");
    poc->add_option("--ls-budget-ms", poc_ls_budget, "local search budget");
    poc->add_option("--target-init-count", poc_target, "stop initialization at this population size");
    poc->add_option("--w1", poc_w1, "storage-time weight (integer or p/q)");
    poc->add_option("--w2", poc_w2, "area weight (integer or p/q)");
    poc->add_option("--workers", poc_workers, "parallel workers");
    poc->add_option("--out", poc_out, "run result output file");

    // bench
    auto* bench = app.add_subcommand("bench", "two-phase benchmark protocol");
    bench->require_subcommand(1);
    auto* phase1 = bench->add_subcommand("phase1", "population counts per method");
    std::vector<std::string> p1_instances;
    std::string p1_out, p1_format = "json", p1_backend = "anneal", p1_methods = "classical,qi4wop";
    int p1_runs = 10, p1_workers = 1;
    std::optional<std::uint64_t> p1_seed;
    std::optional<std::int64_t> p1_budget, p1_samples;
    phase1->add_option("--instance", p1_instances, "instance file (repeatable)")->required();
    phase1->add_option("--methods", p1_methods, "comma list of classical,qi4wop");
    phase1->add_option("--runs", p1_runs, "independent runs per cell");
    phase1->add_option("--seed", p1_seed, "base seed");
    phase1->add_option("--classical-budget-ms", p1_budget, "classical initialization budget");
    phase1->add_option("--samples", p1_samples, "pipeline samples N");
    phase1->add_option("--backend", p1_backend, "pipeline backend");
    phase1->add_option("--workers", p1_workers, "parallel workers");
    phase1->add_option("--out", p1_out, "report base path");
    phase1->add_option("--format", p1_format, "json | csv");

    auto* phase2 = bench->add_subcommand("phase2", "paired quality comparison");
    std::string p2_instance, p2_out, p2_format = "json", p2_backend = "anneal";
    int p2_runs = 25, p2_workers = 1;
    std::optional<std::uint64_t> p2_seed;
    std::optional<std::int64_t> p2_init_budget, p2_ls_budget, p2_samples;
    phase2->add_option("--instance", p2_instance, "instance file")->required();
    phase2->add_option("--runs", p2_runs, "paired runs");
    phase2->add_option("--seed", p2_seed, "base seed");
    phase2->add_option("--init-budget-ms", p2_init_budget, "classical init budget cap");
    phase2->add_option("--ls-budget-ms", p2_ls_budget, "local search budget");
    phase2->add_option("--samples", p2_samples, "pipeline samples N");
    phase2->add_option("--backend", p2_backend, "pipeline backend");
    phase2->add_option("--workers", p2_workers, "parallel workers");
    phase2->add_option("--out", p2_out, "report base path");
    phase2->add_option("--format", p2_format, "json | csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        FileConfig config = load_config(config_path);

        if (gen->parsed()) {
            auto ratio_int = static_cast<std::int64_t>(fill_ratio * 1000.0 + 0.5);
            spec.capacity_fill_ratio = Rat(ratio_int, 1000);
            GeneratedInstance generated = generate_instance(spec);
            save_instance(generated.instance, gen_out);
            std::filesystem::path witness_path(gen_out);
            witness_path.replace_extension(".witness.json");
            save_solution(generated.witness, witness_path);
            std::cout << "wrote " << gen_out << " (" << generated.instance.name << ") and " << witness_path.string()
                      << "\n";
            return 0;
        }

        if (validate->parsed()) {
            Instance instance = load_instance(validate_instance_path);
            FeasibilityReport instance_report = validate_instance(instance);
            int code = print_report(instance_report, "instance " + instance.name);
            if (code != 0) return 1;
            if (!validate_solution_path.empty()) {
                WopSolution solution = load_solution(validate_solution_path);
                return print_report(is_feasible(solution, instance), "solution");
            }
            return 0;
        }

        if (solve->parsed()) {
            Instance instance = load_instance(solve_instance_path);
            QI4WOPConfig qi = config.qi;
            if (solve_samples) qi.sampler.num_samples = *solve_samples;
            if (solve_seed) {
                qi.sampler.seed = *solve_seed;
                qi.p2_seed = derive_seed(*solve_seed, 7);
            }
            if (solve_mutant_p) qi.mutant_probability = *solve_mutant_p;
            auto backend = make_backend(solve_backend, solve_workers);
            Population population = run_qi4wop(instance, qi, *backend, solve_workers);
            std::cout << "solutions=" << population.solutions.size() << " generated=" << population.stats.generated
                      << " dup=" << population.stats.dropped_duplicate
                      << " infeasible=" << population.stats.dropped_infeasible << " p1_ms=" << population.p1_wall_ms
                      << " p2_ms=" << population.p2_wall_ms << "\n";
            if (!solve_out.empty()) write_text(solve_out, population_to_json(population).dump(2) + "\n");
            return 0;
        }

        if (poc->parsed()) {
            Instance instance = load_instance(poc_instance_path);
            PocConfig pc = config.poc;
            if (poc_mode == "classical") {
                pc.init_mode = InitMode::Classical;
            } else if (poc_mode == "qi4wop") {
                pc.init_mode = InitMode::QI4WOP;
            } else {
                throw Error("invalid-config", "mode must be classical or qi4wop");
            }
            if (poc_seed) pc.seed = *poc_seed;
            if (poc_init_budget) pc.init_time_budget_ms = *poc_init_budget;
            if (poc_ls_budget) pc.local_search_budget_ms = *poc_ls_budget;
            if (poc_target) pc.target_init_count = *poc_target;
            if (poc_w1) pc.weights.w1 = rat_from_string(*poc_w1);
            if (poc_w2) pc.weights.w2 = rat_from_string(*poc_w2);
            std::unique_ptr<SolverBackend> backend;
            if (pc.init_mode == InitMode::QI4WOP) backend = make_backend(poc_backend, poc_workers);
            RunResult result = run_poc(instance, pc, backend.get(), poc_workers);
            std::cout << "init=" << result.init_population_size << " best_initial=" << rat_to_string(result.best_initial.score)
                      << " best_final=" << rat_to_string(result.best_final.score) << "\n";
            if (!poc_out.empty()) write_text(poc_out, run_result_to_json(result).dump(2) + "\n");
            return 0;
        }

        if (phase1->parsed()) {
            std::vector<Instance> instances;
            for (const std::string& path : p1_instances) instances.push_back(load_instance(path));
            std::vector<Method> methods;
            std::stringstream ss(p1_methods);
            std::string token;
            while (std::getline(ss, token, ',')) {
                if (token == "classical") {
                    methods.push_back(Method::Classical);
                } else if (token == "qi4wop") {
                    methods.push_back(Method::QI4WOP);
                } else {
                    throw Error("invalid-config", "unknown method '" + token + "'");
                }
            }
            BenchConfig bc = config.bench;
            bc.backend = p1_backend;
            bc.workers = p1_workers;
            if (p1_seed) bc.base_seed = *p1_seed;
            if (p1_budget) bc.classical_budget_ms = *p1_budget;
            if (p1_samples) bc.qi.sampler.num_samples = *p1_samples;
            Phase1Report report = run_phase1(instances, methods, p1_runs, bc);
            std::string body = p1_format == "csv" ? phase1_report_to_csv(report)
                                                  : phase1_report_to_json(report).dump(2) + "\n";
            if (p1_out.empty()) {
                std::cout << body;
            } else {
                std::string ext = p1_format == "csv" ? ".csv" : ".json";
                write_text(p1_out + ext, body);
                write_text(p1_out + ".runs.ndjson", phase1_runs_to_ndjson(report));
                std::cout << "wrote " << p1_out << ext << " and " << p1_out << ".runs.ndjson\n";
            }
            return 0;
        }

        if (phase2->parsed()) {
            Instance instance = load_instance(p2_instance);
            BenchConfig bc = config.bench;
            bc.backend = p2_backend;
            bc.workers = p2_workers;
            if (p2_seed) bc.base_seed = *p2_seed;
            if (p2_samples) bc.qi.sampler.num_samples = *p2_samples;
            PocConfig pc = config.poc;
            pc.qi = bc.qi;
            if (p2_init_budget) pc.init_time_budget_ms = *p2_init_budget;
            if (p2_ls_budget) pc.local_search_budget_ms = *p2_ls_budget;
            Phase2Report report = run_phase2(instance, p2_runs, pc, bc);
            std::string body = p2_format == "csv" ? phase2_report_to_csv(report)
                                                  : phase2_report_to_json(report).dump(2) + "\n";
            if (p2_out.empty()) {
                std::cout << body;
            } else {
                std::string ext = p2_format == "csv" ? ".csv" : ".json";
                write_text(p2_out + ext, body);
                std::cout << "wrote " << p2_out << ext << "\n";
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::cerr << app.help();
    return 2;
}

int cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("wop");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace wop
