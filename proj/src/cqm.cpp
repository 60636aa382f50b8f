#include "wop/cqm.hpp"

#include <fstream>

#include "wop/feasibility.hpp"

namespace wop {

using nlohmann::json;

const std::unordered_map<std::string, std::size_t>& CqmModel::var_positions() const {
    if (var_pos_.size() != variables.size()) {
        var_pos_.clear();
        for (std::size_t i = 0; i < variables.size(); ++i) var_pos_.emplace(variables[i].id, i);
    }
    return var_pos_;
}

CqmModel build_subwop_model(const Instance& instance) {
    FeasibilityReport valid = validate_instance(instance);
    if (!valid.feasible)
        throw Error("invalid-instance", valid.violations.front().rule + ": " + valid.violations.front().detail);

    InstanceIndex index(instance);
    CqmModel model;

    // Variables in item-major, location-minor instance order. Ineligible
    // pairs are eliminated instead of penalized.
    std::map<std::string, std::vector<std::string>> vars_of_item;
    for (const Item& item : instance.items) {
        const ItemType& type = index.type_of(item);
        for (const Location& loc : instance.locations) {
            if (!eligible(type, loc)) continue;
            std::string var_id = "x[" + item.id + "," + loc.id + "]";
            model.variables.push_back({var_id, VarType::Binary, std::nullopt});
            model.var_index[{item.id, loc.id}] = var_id;
            vars_of_item[item.id].push_back(var_id);
            model.objective.add_term(var_id, Rat(-1));
        }
    }

    for (const Item& item : instance.items) {
        auto it = vars_of_item.find(item.id);
        if (it == vars_of_item.end()) {
            if (index.type_of(item).max_stack_height == 1)
                throw Error("structurally-infeasible",
                            "non-stackable item '" + item.id + "' is structurally infeasible: no eligible location");
            continue;
        }
        Constraint c;
        c.label = "one-loc:" + item.id;
        for (const std::string& v : it->second) c.lhs.add_term(v, Rat(1));
        c.sense = Sense::Le;
        c.rhs = Rat(1);
        model.constraints.push_back(std::move(c));
    }

    for (const Location& loc : instance.locations) {
        Constraint c;
        c.label = "cap:" + loc.id;
        for (const Item& item : instance.items) {
            auto it = model.var_index.find({item.id, loc.id});
            if (it == model.var_index.end()) continue;
            c.lhs.add_term(it->second, Rat(index.type_of(item).area));
        }
        c.sense = Sense::Le;
        c.rhs = Rat(loc.capacity);
        model.constraints.push_back(std::move(c));
    }

    for (const Item& item : instance.items) {
        if (index.type_of(item).max_stack_height != 1) continue;
        Constraint c;
        c.label = "must-place:" + item.id;
        for (const std::string& v : vars_of_item.at(item.id)) c.lhs.add_term(v, Rat(1));
        c.sense = Sense::Ge;
        c.rhs = Rat(1);
        model.constraints.push_back(std::move(c));
    }
    return model;
}

namespace {

Rat value_of(const Assignment& assignment, const std::string& var) {
    auto it = assignment.find(var);
    if (it == assignment.end()) throw Error("missing-variable", "assignment lacks a value for '" + var + "'");
    return it->second;
}

Rat eval_expr(const LinearExpr& expr, const Assignment& assignment) {
    Rat total = expr.bias;
    for (const auto& [var, coeff] : expr.terms) total += coeff * value_of(assignment, var);
    for (const auto& [pair, coeff] : expr.quadratic)
        total += coeff * value_of(assignment, pair.first) * value_of(assignment, pair.second);
    return total;
}

}  // namespace

Evaluation evaluate(const CqmModel& model, const Assignment& assignment) {
    const auto& positions = model.var_positions();
    for (const auto& [var, value] : assignment) {
        auto it = positions.find(var);
        if (it == positions.end()) throw Error("unknown-variable", "assignment references unknown variable '" + var + "'");
        const Variable& decl = model.variables[it->second];
        if (decl.vartype == VarType::Binary) {
            if (value != Rat(0) && value != Rat(1))
                throw Error("domain-error", "binary variable '" + var + "' assigned " + rat_to_string(value));
        } else if (decl.bounds) {
            if (value < decl.bounds->first || value > decl.bounds->second)
                throw Error("domain-error", "variable '" + var + "' assigned " + rat_to_string(value) + " outside bounds");
        }
    }

    for (const Variable& v : model.variables) {
        if (!assignment.count(v.id)) throw Error("missing-variable", "assignment lacks a value for '" + v.id + "'");
    }

    Evaluation eval;
    eval.objective_value = eval_expr(model.objective, assignment);
    for (const Constraint& c : model.constraints) {
        Rat lhs = eval_expr(c.lhs, assignment);
        Rat magnitude{0};
        switch (c.sense) {
            case Sense::Le: magnitude = lhs > c.rhs ? lhs - c.rhs : Rat(0); break;
            case Sense::Ge: magnitude = lhs < c.rhs ? c.rhs - lhs : Rat(0); break;
            case Sense::Eq: magnitude = lhs >= c.rhs ? lhs - c.rhs : c.rhs - lhs; break;
        }
        if (magnitude != Rat(0)) {
            eval.violations[c.label] = magnitude;
            eval.feasible = false;
        }
    }
    return eval;
}

PartialSolution assignment_to_partial(const Assignment& assignment, const CqmModel& model, const Instance& instance) {
    InstanceIndex index(instance);
    PartialSolution partial;
    for (const auto& [pair, var] : model.var_index) {
        if (value_of(assignment, var) == Rat(0)) continue;
        auto [it, inserted] = partial.assignments.emplace(pair.first, pair.second);
        if (!inserted)
            throw Error("multi-placement",
                        "item '" + pair.first + "' placed in both '" + it->second + "' and '" + pair.second + "'");
        index.item(pair.first);  // malformed var_index guard
    }
    return partial;
}

namespace {

std::string vartype_to_string(VarType t) {
    switch (t) {
        case VarType::Binary: return "binary";
        case VarType::Integer: return "integer";
        case VarType::Real: return "real";
    }
    return "binary";
}

VarType vartype_from_string(const std::string& s) {
    if (s == "binary") return VarType::Binary;
    if (s == "integer") return VarType::Integer;
    if (s == "real") return VarType::Real;
    throw Error("parse-error", "unknown vartype '" + s + "'");
}

std::string sense_to_string(Sense s) {
    switch (s) {
        case Sense::Le: return "<=";
        case Sense::Ge: return ">=";
        case Sense::Eq: return "==";
    }
    return "<=";
}

Sense sense_from_string(const std::string& s) {
    if (s == "<=") return Sense::Le;
    if (s == ">=") return Sense::Ge;
    if (s == "==") return Sense::Eq;
    throw Error("parse-error", "unknown constraint sense '" + s + "'");
}

json expr_terms_to_json(const LinearExpr& expr) {
    json terms = json::object();
    for (const auto& [var, coeff] : expr.terms) terms[var] = rat_to_json(coeff);
    return terms;
}

void expr_terms_from_json(const json& j, LinearExpr& expr) {
    for (auto it = j.begin(); it != j.end(); ++it) expr.add_term(it.key(), rat_from_json(it.value()));
}

}  // namespace

json model_to_json(const CqmModel& model) {
    json vars = json::array();
    for (const Variable& v : model.variables) {
        json vj = {{"id", v.id}, {"vartype", vartype_to_string(v.vartype)}};
        if (v.bounds) vj["bounds"] = json::array({rat_to_json(v.bounds->first), rat_to_json(v.bounds->second)});
        vars.push_back(std::move(vj));
    }
    json constraints = json::array();
    for (const Constraint& c : model.constraints) {
        constraints.push_back({{"label", c.label},
                               {"terms", expr_terms_to_json(c.lhs)},
                               {"sense", sense_to_string(c.sense)},
                               {"rhs", rat_to_json(c.rhs)}});
    }
    json var_index = json::object();
    for (const auto& [pair, var] : model.var_index) {
        var_index[var] = {{"item", pair.first}, {"location", pair.second}};
    }
    return json{{"variables", vars},
                {"objective", {{"terms", expr_terms_to_json(model.objective)}, {"bias", rat_to_json(model.objective.bias)}}},
                {"constraints", constraints},
                {"var_index", var_index}};
}

CqmModel model_from_json(const json& j) {
    if (!j.is_object()) throw Error("parse-error", "model document must be an object");
    CqmModel model;
    if (!j.contains("variables") || !j.at("variables").is_array())
        throw Error("parse-error", "model requires a 'variables' array");
    for (const json& vj : j.at("variables")) {
        Variable v;
        v.id = vj.at("id").get<std::string>();
        v.vartype = vartype_from_string(vj.at("vartype").get<std::string>());
        if (vj.contains("bounds")) {
            const json& b = vj.at("bounds");
            if (!b.is_array() || b.size() != 2) throw Error("parse-error", "bounds of '" + v.id + "' must be [lo, hi]");
            v.bounds = std::make_pair(rat_from_json(b[0]), rat_from_json(b[1]));
        }
        if (v.vartype != VarType::Binary && !v.bounds)
            throw Error("parse-error", "non-binary variable '" + v.id + "' requires bounds");
        if (model.has_variable(v.id)) throw Error("parse-error", "variable '" + v.id + "' declared twice");
        model.variables.push_back(std::move(v));
    }
    if (j.contains("objective")) {
        const json& oj = j.at("objective");
        if (oj.contains("terms")) expr_terms_from_json(oj.at("terms"), model.objective);
        if (oj.contains("bias")) model.objective.bias = rat_from_json(oj.at("bias"));
    }
    if (j.contains("constraints")) {
        std::unordered_map<std::string, bool> labels;
        for (const json& cj : j.at("constraints")) {
            Constraint c;
            c.label = cj.at("label").get<std::string>();
            if (!labels.emplace(c.label, true).second)
                throw Error("parse-error", "constraint label '" + c.label + "' repeats");
            expr_terms_from_json(cj.at("terms"), c.lhs);
            c.sense = sense_from_string(cj.at("sense").get<std::string>());
            c.rhs = rat_from_json(cj.at("rhs"));
            model.constraints.push_back(std::move(c));
        }
    }
    if (j.contains("var_index")) {
        const json& vi = j.at("var_index");
        for (auto it = vi.begin(); it != vi.end(); ++it) {
            model.var_index[{it.value().at("item").get<std::string>(), it.value().at("location").get<std::string>()}] =
                it.key();
        }
    }

    // every referenced variable must be declared
    for (const auto& [var, coeff] : model.objective.terms) {
        if (!model.has_variable(var)) throw Error("parse-error", "objective references undeclared variable '" + var + "'");
    }
    for (const Constraint& c : model.constraints) {
        for (const auto& [var, coeff] : c.lhs.terms) {
            if (!model.has_variable(var))
                throw Error("parse-error", "constraint '" + c.label + "' references undeclared variable '" + var + "'");
        }
    }
    for (const auto& [pair, var] : model.var_index) {
        if (!model.has_variable(var)) throw Error("parse-error", "var_index references undeclared variable '" + var + "'");
    }
    return model;
}

CqmModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("io-error", "cannot open '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("parse-error", std::string(e.what()) + " in '" + path.string() + "'");
    }
    return model_from_json(j);
}

void save_model(const CqmModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("io-error", "cannot write '" + path.string() + "'");
    out << model_to_json(model).dump(2) << "\n";
}

}  // namespace wop
