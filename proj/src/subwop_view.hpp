#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wop/cqm.hpp"
#include "wop/error.hpp"

namespace wop {

// Categorical view of a builder-shaped model: per item, the eligible location
// choices with their areas; per location, the capacity. Derived from the
// "cap:" / "must-place:" constraint labels so imported models work too.
struct SubwopView {
    struct Choice {
        std::size_t loc_idx;
        std::string var;
        std::int64_t area;
    };
    struct ItemView {
        std::string id;
        std::vector<Choice> choices;
        bool must_place = false;
    };

    std::vector<std::string> locations;
    std::vector<std::int64_t> capacities;
    std::vector<ItemView> items;
    std::int64_t max_area = 0;

    static SubwopView from_model(const CqmModel& model) {
        SubwopView view;
        std::map<std::string, std::size_t> loc_idx;
        std::map<std::string, Rat> area_of_var;
        for (const Constraint& c : model.constraints) {
            if (c.label.rfind("cap:", 0) != 0) continue;
            std::string loc = c.label.substr(4);
            if (c.rhs.denominator() != 1)
                throw Error("unsupported-model", "capacity of '" + loc + "' is not an integer");
            loc_idx.emplace(loc, view.locations.size());
            view.locations.push_back(loc);
            view.capacities.push_back(c.rhs.numerator());
            for (const auto& [var, coeff] : c.lhs.terms) area_of_var[var] = coeff;
        }
        if (view.locations.empty()) throw Error("unsupported-model", "model has no 'cap:' constraints");

        std::map<std::string, bool> must_place;
        for (const Constraint& c : model.constraints) {
            if (c.label.rfind("must-place:", 0) == 0) must_place[c.label.substr(11)] = true;
        }

        std::map<std::string, std::size_t> item_idx;
        for (const auto& [pair, var] : model.var_index) {
            const auto& [item, loc] = pair;
            auto [it, inserted] = item_idx.emplace(item, view.items.size());
            if (inserted) view.items.push_back({item, {}, must_place.count(item) > 0});
            auto lit = loc_idx.find(loc);
            if (lit == loc_idx.end())
                throw Error("unsupported-model", "variable '" + var + "' references location '" + loc +
                                                     "' without a cap constraint");
            auto ait = area_of_var.find(var);
            if (ait == area_of_var.end() || ait->second.denominator() != 1 || ait->second.numerator() < 1)
                throw Error("unsupported-model", "variable '" + var + "' has no positive integer area");
            std::int64_t area = ait->second.numerator();
            view.items[it->second].choices.push_back({lit->second, var, area});
            if (area > view.max_area) view.max_area = area;
        }
        // must-place items whose variables were all eliminated
        for (const auto& [item, flag] : must_place) {
            if (!item_idx.count(item)) view.items.push_back({item, {}, true});
        }
        return view;
    }
};

}  // namespace wop
