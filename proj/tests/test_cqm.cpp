#include <set>

#include "doctest.h"

#include "wop/cqm.hpp"
#include "wop/feasibility.hpp"
#include "wop/rng.hpp"

#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace wop;

namespace {

Assignment zero_assignment(const CqmModel& model) {
    Assignment a;
    for (const Variable& v : model.variables) a[v.id] = Rat(0);
    return a;
}

std::int64_t count_labels(const CqmModel& model, const std::string& prefix) {
    std::int64_t n = 0;
    for (const Constraint& c : model.constraints) {
        if (c.label.rfind(prefix, 0) == 0) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("T1 model structure") {
    CqmModel model = build_subwop_model(fixtures::t1());
    CHECK(model.variables.size() == 7);  // 3 A-items x 2 locations + b1 x floor
    CHECK(model.var_index.size() == 7);
    CHECK(count_labels(model, "one-loc:") == 4);
    CHECK(count_labels(model, "cap:") == 2);
    CHECK(count_labels(model, "must-place:") == 1);
    CHECK(model.var_index.count({"b1", "floor"}) == 1);
    CHECK(model.var_index.count({"b1", "shelf"}) == 0);  // eliminated, not penalized
    for (const Variable& v : model.variables) CHECK(v.vartype == VarType::Binary);
}

TEST_CASE("minimal model: one stackable item, one floor location") {
    Instance inst;
    inst.name = "mini";
    inst.locations.push_back({"floor", 5, LocationKind::Floor, 1, 1});
    inst.item_types.push_back({"A", 2, true, 3});
    inst.items.push_back({"a1", "A"});
    CqmModel model = build_subwop_model(inst);
    CHECK(model.variables.size() == 1);
    CHECK(count_labels(model, "one-loc:") == 1);
    CHECK(count_labels(model, "cap:") == 1);
    CHECK(count_labels(model, "must-place:") == 0);
}

TEST_CASE("non-stackable item with no eligible location is structurally infeasible") {
    Instance inst;
    inst.name = "stuck";
    inst.locations.push_back({"shelf", 5, LocationKind::Shelf, 1, 1});
    inst.item_types.push_back({"B", 2, false, 1});
    inst.items.push_back({"b1", "B"});
    CHECK_THROWS_WITH_AS(build_subwop_model(inst), doctest::Contains("structurally infeasible"), Error);
}

TEST_CASE("evaluate the all-zero assignment on T1") {
    CqmModel model = build_subwop_model(fixtures::t1());
    Evaluation eval = evaluate(model, zero_assignment(model));
    CHECK(eval.objective_value == Rat(0));
    CHECK_FALSE(eval.feasible);
    REQUIRE(eval.violations.count("must-place:b1") == 1);
    CHECK(eval.violations.at("must-place:b1") == Rat(1));
    CHECK(eval.violations.size() == 1);
}

TEST_CASE("evaluate a feasible T1 assignment") {
    CqmModel model = build_subwop_model(fixtures::t1());
    Assignment a = zero_assignment(model);
    a[model.var_index.at({"b1", "floor"})] = Rat(1);
    a[model.var_index.at({"a1", "floor"})] = Rat(1);
    a[model.var_index.at({"a2", "shelf"})] = Rat(1);
    Evaluation eval = evaluate(model, a);
    CHECK(eval.objective_value == Rat(-3));
    CHECK(eval.feasible);
    CHECK(eval.violations.empty());
}

TEST_CASE("evaluate an overloaded shelf") {
    CqmModel model = build_subwop_model(fixtures::t1());
    Assignment a = zero_assignment(model);
    a[model.var_index.at({"b1", "floor"})] = Rat(1);
    a[model.var_index.at({"a1", "shelf"})] = Rat(1);
    a[model.var_index.at({"a2", "shelf"})] = Rat(1);
    a[model.var_index.at({"a3", "shelf"})] = Rat(1);
    Evaluation eval = evaluate(model, a);
    CHECK_FALSE(eval.feasible);
    REQUIRE(eval.violations.count("cap:shelf") == 1);
    CHECK(eval.violations.at("cap:shelf") == Rat(5));  // 9 areas vs capacity 4
}

TEST_CASE("evaluate rejects missing and out-of-domain values") {
    CqmModel model = build_subwop_model(fixtures::t1());
    Assignment a = zero_assignment(model);
    a.erase(a.begin()->first);
    CHECK_THROWS_AS(evaluate(model, a), Error);

    Assignment b = zero_assignment(model);
    b.begin()->second = Rat(2);
    CHECK_THROWS_AS(evaluate(model, b), Error);

    Assignment c = zero_assignment(model);
    c["x[ghost,floor]"] = Rat(0);
    CHECK_THROWS_AS(evaluate(model, c), Error);
}

TEST_CASE("assignment decoding") {
    Instance inst = fixtures::t1();
    CqmModel model = build_subwop_model(inst);

    Assignment a = zero_assignment(model);
    a[model.var_index.at({"b1", "floor"})] = Rat(1);
    a[model.var_index.at({"a1", "floor"})] = Rat(1);
    a[model.var_index.at({"a2", "shelf"})] = Rat(1);
    PartialSolution partial = assignment_to_partial(a, model, inst);
    CHECK(partial.assignments.size() == 3);
    CHECK(partial.assignments.at("b1") == "floor");
    CHECK(partial.assignments.at("a1") == "floor");
    CHECK(partial.assignments.at("a2") == "shelf");
    CHECK(partial.assignments.count("a3") == 0);

    PartialSolution empty = assignment_to_partial(zero_assignment(model), model, inst);
    CHECK(empty.assignments.empty());

    Assignment twice = zero_assignment(model);
    twice[model.var_index.at({"a1", "floor"})] = Rat(1);
    twice[model.var_index.at({"a1", "shelf"})] = Rat(1);
    CHECK_THROWS_WITH_AS(assignment_to_partial(twice, model, inst), doctest::Contains("multi-placement"), Error);
}

TEST_CASE("model json round trip is an identity") {
    CqmModel model = build_subwop_model(fixtures::t1());
    nlohmann::json j = model_to_json(model);
    CqmModel back = model_from_json(j);
    CHECK(model_to_json(back) == j);
    CHECK(model_to_json(back).dump(2) == j.dump(2));
    CHECK(back.var_index == model.var_index);
}

TEST_CASE("model import rejects undeclared references") {
    CqmModel model = build_subwop_model(fixtures::t1());
    nlohmann::json j = model_to_json(model);
    j["constraints"][0]["terms"]["x[ghost,floor]"] = 1;
    CHECK_THROWS_AS(model_from_json(j), Error);

    nlohmann::json dup = model_to_json(model);
    dup["variables"].push_back(dup["variables"][0]);
    CHECK_THROWS_AS(model_from_json(dup), Error);

    nlohmann::json twice = model_to_json(model);
    twice["constraints"].push_back(twice["constraints"][0]);
    CHECK_THROWS_AS(model_from_json(twice), Error);

    nlohmann::json unbounded = model_to_json(model);
    unbounded["variables"][0]["vartype"] = "integer";  // no bounds given
    CHECK_THROWS_AS(model_from_json(unbounded), Error);
}

// random instances for the structural property checks
namespace {

Instance random_instance(Rng& rng) {
    Instance inst;
    inst.name = "fuzz";
    std::int64_t n_locs = 1 + static_cast<std::int64_t>(bounded(rng, 3));
    std::int64_t n_types = 1 + static_cast<std::int64_t>(bounded(rng, 3));
    std::int64_t n_items = 1 + static_cast<std::int64_t>(bounded(rng, 5));
    for (std::int64_t l = 0; l < n_locs; ++l) {
        inst.locations.push_back({"L" + std::to_string(l), 1 + static_cast<std::int64_t>(bounded(rng, 12)),
                                  bounded(rng, 4) == 0 ? LocationKind::Shelf : LocationKind::Floor,
                                  static_cast<std::int64_t>(bounded(rng, 10)),
                                  static_cast<std::int64_t>(bounded(rng, 5))});
    }
    for (std::int64_t t = 0; t < n_types; ++t) {
        inst.item_types.push_back({"T" + std::to_string(t), 1 + static_cast<std::int64_t>(bounded(rng, 5)),
                                   bounded(rng, 2) == 0, 1 + static_cast<std::int64_t>(bounded(rng, 3))});
    }
    for (std::int64_t i = 0; i < n_items; ++i) {
        inst.items.push_back(
            {"i" + std::to_string(i), "T" + std::to_string(bounded(rng, static_cast<std::uint64_t>(n_types)))});
    }
    return inst;
}

}  // namespace

TEST_CASE("random assignments: violations only on declared labels, decode respects shelves") {
    Rng rng(7);
    int built = 0;
    while (built < 60) {
        Instance inst = random_instance(rng);
        CqmModel model;
        try {
            model = build_subwop_model(inst);
        } catch (const Error&) {
            continue;  // structurally infeasible draw
        }
        ++built;
        std::set<std::string> labels;
        for (const Constraint& c : model.constraints) labels.insert(c.label);
        CHECK(labels.size() == model.constraints.size());  // unique labels

        InstanceIndex index(inst);
        for (int trial = 0; trial < 5; ++trial) {
            Assignment a;
            for (const Variable& v : model.variables) a[v.id] = Rat(static_cast<std::int64_t>(bounded(rng, 2)));
            Evaluation eval = evaluate(model, a);
            for (const auto& [label, magnitude] : eval.violations) {
                CHECK(labels.count(label) == 1);
                CHECK(magnitude > Rat(0));
            }
            bool one_loc_ok = true;
            for (const Constraint& c : model.constraints) {
                if (c.label.rfind("one-loc:", 0) == 0 && eval.violations.count(c.label)) one_loc_ok = false;
            }
            if (!one_loc_ok) continue;
            PartialSolution partial = assignment_to_partial(a, model, inst);
            // eliminated variables make shelf violations structurally impossible
            for (const auto& [item, loc] : partial.assignments) {
                CHECK(eligible(index.type_of_item(item), index.location(loc)));
            }
            // objective identity: -(placed count) whenever one-loc holds
            CHECK(eval.objective_value == Rat(-static_cast<std::int64_t>(partial.assignments.size())));
            if (eval.feasible) {
                CHECK(is_feasible_partial(partial, inst).feasible);
            }
        }
    }
}
