#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "wop/instance.hpp"
#include "wop/rational.hpp"
#include "wop/solution.hpp"

namespace wop {

enum class VarType { Binary, Integer, Real };

struct Variable {
    std::string id;
    VarType vartype = VarType::Binary;
    std::optional<std::pair<Rat, Rat>> bounds;  // required for Integer/Real
};

// Linear expression with an optional quadratic extension. The ground-placement
// builder only ever emits linear terms.
struct LinearExpr {
    std::map<std::string, Rat> terms;  // variable id -> coefficient, no zeros
    Rat bias{0};
    std::map<std::pair<std::string, std::string>, Rat> quadratic;

    void add_term(const std::string& var, const Rat& coeff) {
        Rat& c = terms[var];
        c += coeff;
        if (c == Rat(0)) terms.erase(var);
    }
};

enum class Sense { Le, Ge, Eq };

struct Constraint {
    std::string label;  // unique within a model
    LinearExpr lhs;
    Sense sense = Sense::Le;
    Rat rhs{0};
};

struct CqmModel {
    std::vector<Variable> variables;
    LinearExpr objective;
    std::vector<Constraint> constraints;
    // (item id, location id) -> variable id, covering exactly the eligible pairs
    std::map<std::pair<std::string, std::string>, std::string> var_index;

    bool has_variable(const std::string& id) const { return var_positions().count(id) > 0; }
    const std::unordered_map<std::string, std::size_t>& var_positions() const;

private:
    mutable std::unordered_map<std::string, std::size_t> var_pos_;
};

using Assignment = std::map<std::string, Rat>;  // variable id -> value

struct Evaluation {
    Rat objective_value{0};
    std::map<std::string, Rat> violations;  // constraint label -> positive magnitude
    bool feasible = true;
};

// Emits the ground-placement subproblem: one binary variable per eligible
// (item, location) pair, objective minimizing the negated count of placed
// items, at-most-one-location and capacity constraints, and a must-place
// constraint for every non-stackable item. Shelf-prohibited pairs get no
// variable at all.
CqmModel build_subwop_model(const Instance& instance);

// Evaluates a total assignment. Violation magnitudes: max(0, lhs-rhs) for Le,
// max(0, rhs-lhs) for Ge, |lhs-rhs| for Eq; only positive magnitudes are kept.
Evaluation evaluate(const CqmModel& model, const Assignment& assignment);

// Decodes an assignment into a ground-level partial solution. The assignment
// must place each item in at most one location.
PartialSolution assignment_to_partial(const Assignment& assignment, const CqmModel& model, const Instance& instance);

// JSON model format: {variables, objective, constraints, var_index}.
// Import of an export is an identity.
nlohmann::json model_to_json(const CqmModel& model);
CqmModel model_from_json(const nlohmann::json& j);

CqmModel load_model(const std::filesystem::path& path);
void save_model(const CqmModel& model, const std::filesystem::path& path);

}  // namespace wop
