#include <cstdlib>
#include <fstream>
#include <iostream>

#include "wop/solvers.hpp"

namespace wop {

using nlohmann::json;

void export_for_remote(const CqmModel& model, const std::filesystem::path& path) {
    save_model(model, path);
}

json sampleset_to_json(const SampleSet& set) {
    json samples = json::array();
    for (const Sample& s : set.samples) {
        json assignment = json::object();
        for (const auto& [var, value] : s.assignment) assignment[var] = rat_to_json(value);
        samples.push_back({{"assignment", assignment}, {"objective", rat_to_json(s.evaluation.objective_value)}});
    }
    return json{{"samples", samples}};
}

SampleSet import_sampleset(const std::filesystem::path& path, const CqmModel& model) {
    std::ifstream in(path);
    if (!in) throw Error("io-error", "cannot open '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("parse-error", std::string(e.what()) + " in '" + path.string() + "'");
    }
    if (!j.is_object() || !j.contains("samples") || !j.at("samples").is_array())
        throw Error("parse-error", "sample-set document requires a 'samples' array");

    SampleSet set;
    set.backend_name = "remote";
    std::size_t index = 0;
    for (const json& sj : j.at("samples")) {
        if (!sj.is_object() || !sj.contains("assignment") || !sj.at("assignment").is_object())
            throw Error("parse-error", "sample " + std::to_string(index) + " requires an 'assignment' object");
        Assignment a;
        for (auto it = sj.at("assignment").begin(); it != sj.at("assignment").end(); ++it) {
            if (!model.has_variable(it.key()))
                throw Error("unknown-variable",
                            "sample " + std::to_string(index) + " references unknown variable '" + it.key() + "'");
            a[it.key()] = rat_from_json(it.value());
        }
        // recorded objectives are advisory; the local evaluation wins
        Evaluation eval = evaluate(model, a);
        if (sj.contains("objective")) {
            Rat recorded = rat_from_json(sj.at("objective"));
            if (recorded != eval.objective_value) {
                std::cerr << "[wop] imported sample " << index << ": recorded objective " << rat_to_string(recorded)
                          << " disagrees with local " << rat_to_string(eval.objective_value) << ", keeping local\n";
            }
        }
        set.samples.push_back({std::move(a), std::move(eval)});
        ++index;
    }
    return set;
}

RemoteBackend::RemoteBackend(std::filesystem::path dir) : dir_(std::move(dir)) {
    if (dir_.empty()) {
        if (const char* env = std::getenv("WOP_REMOTE_DIR")) dir_ = env;
    }
    if (dir_.empty()) throw Error("invalid-config", "remote backend needs a directory (WOP_REMOTE_DIR)");
}

SampleSet RemoteBackend::sample(const CqmModel& model, const SamplerConfig& config) {
    std::filesystem::create_directories(dir_);
    std::filesystem::path model_path = dir_ / "model.json";
    std::filesystem::path samples_path = dir_ / "samples.json";
    export_for_remote(model, model_path);
    if (!std::filesystem::exists(samples_path)) {
        throw Error("remote-pending", "model exported to '" + model_path.string() + "', awaiting '" +
                                          samples_path.string() + "'");
    }
    SampleSet set = import_sampleset(samples_path, model);
    if (config.num_samples > 0 && set.samples.size() > static_cast<std::size_t>(config.num_samples)) {
        set.samples.resize(static_cast<std::size_t>(config.num_samples));
        set.truncated = true;
    }
    set.wall_time_ms += config.queue_latency_offset_ms;
    return set;
}

}  // namespace wop
