#include <algorithm>
#include <chrono>

#include "wop/solvers.hpp"

#include "subwop_view.hpp"

namespace wop {

std::optional<Rat> SampleSet::best_feasible_objective() const {
    std::optional<Rat> best;
    for (const Sample& s : samples) {
        if (!s.evaluation.feasible) continue;
        if (!best || s.evaluation.objective_value < *best) best = s.evaluation.objective_value;
    }
    return best;
}

namespace {

class ExactSearcher {
public:
    ExactSearcher(const SubwopView& view, const SolveLimits& limits)
        : view_(view), limits_(limits), residual_(view.capacities), choice_(view.items.size(), -1) {}

    void run() { dfs(0, 0); }

    std::int64_t best() const { return best_; }
    const std::vector<std::vector<int>>& optima() const { return optima_; }

private:
    void dfs(std::size_t idx, std::int64_t placed) {
        if (++nodes_ > limits_.max_nodes)
            throw Error("oracle-limit", "node limit " + std::to_string(limits_.max_nodes) + " exceeded");
        std::int64_t remaining = static_cast<std::int64_t>(view_.items.size() - idx);
        if (best_ >= 0 && placed + remaining < best_) return;
        if (idx == view_.items.size()) {
            if (placed > best_) {
                best_ = placed;
                optima_.clear();
            }
            if (placed == best_ && (limits_.max_solutions == 0 ||
                                    static_cast<std::int64_t>(optima_.size()) < limits_.max_solutions)) {
                optima_.push_back(choice_);
            }
            return;
        }
        const SubwopView::ItemView& item = view_.items[idx];
        for (std::size_t c = 0; c < item.choices.size(); ++c) {
            const auto& ch = item.choices[c];
            if (residual_[ch.loc_idx] < ch.area) continue;
            residual_[ch.loc_idx] -= ch.area;
            choice_[idx] = static_cast<int>(c);
            dfs(idx + 1, placed + 1);
            residual_[ch.loc_idx] += ch.area;
        }
        if (!item.must_place) {
            choice_[idx] = -1;
            dfs(idx + 1, placed);
        }
    }

    const SubwopView& view_;
    const SolveLimits& limits_;
    std::vector<std::int64_t> residual_;
    std::vector<int> choice_;
    std::vector<std::vector<int>> optima_;
    std::int64_t nodes_ = 0;
    std::int64_t best_ = -1;  // -1 until a feasible leaf is reached
};

}  // namespace

SampleSet solve_exact(const CqmModel& model, const SolveLimits& limits) {
    auto start = std::chrono::steady_clock::now();
    if (static_cast<std::int64_t>(model.variables.size()) > limits.max_variables) {
        throw Error("oracle-limit", "model has " + std::to_string(model.variables.size()) +
                                        " variables, limit is " + std::to_string(limits.max_variables));
    }
    SubwopView view = SubwopView::from_model(model);
    ExactSearcher searcher(view, limits);
    searcher.run();

    SampleSet set;
    set.backend_name = "exact";
    if (searcher.best() < 0) {
        set.infeasible = true;
    } else {
        // materialize assignments, then order them by their 0/1 encoding
        std::vector<std::pair<std::string, Assignment>> encoded;
        encoded.reserve(searcher.optima().size());
        for (const std::vector<int>& choices : searcher.optima()) {
            Assignment a;
            for (const Variable& v : model.variables) a[v.id] = Rat(0);
            for (std::size_t i = 0; i < choices.size(); ++i) {
                if (choices[i] >= 0) a[view.items[i].choices[static_cast<std::size_t>(choices[i])].var] = Rat(1);
            }
            std::string bits(model.variables.size(), '0');
            for (std::size_t vi = 0; vi < model.variables.size(); ++vi) {
                if (a.at(model.variables[vi].id) == Rat(1)) bits[vi] = '1';
            }
            encoded.emplace_back(std::move(bits), std::move(a));
        }
        std::sort(encoded.begin(), encoded.end(),
                  [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });
        for (auto& [bits, assignment] : encoded) {
            Evaluation eval = evaluate(model, assignment);
            set.samples.push_back({std::move(assignment), std::move(eval)});
        }
    }
    set.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    return set;
}

SampleSet ExactBackend::sample(const CqmModel& model, const SamplerConfig& config) {
    SolveLimits limits = limits_;
    limits.max_solutions = config.num_samples;
    return solve_exact(model, limits);
}

}  // namespace wop
