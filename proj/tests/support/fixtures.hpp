#pragma once

#include "wop/instance.hpp"
#include "wop/solution.hpp"

namespace fixtures {

// Two locations, two types, four items. Floor fits B plus one A on the
// ground, the shelf fits a single A; type A stacks two high.
inline wop::Instance t1() {
    wop::Instance inst;
    inst.name = "T1";
    inst.locations.push_back({"floor", 10, wop::LocationKind::Floor, 5, 2});
    inst.locations.push_back({"shelf", 4, wop::LocationKind::Shelf, 3, 1});
    inst.item_types.push_back({"A", 3, true, 2});
    inst.item_types.push_back({"B", 5, false, 1});
    inst.items.push_back({"a1", "A"});
    inst.items.push_back({"a2", "A"});
    inst.items.push_back({"a3", "A"});
    inst.items.push_back({"b1", "B"});
    return inst;
}

// Reference solution: b1 and a1 on the floor, a3 stacked on a1, a2 on the shelf.
inline wop::WopSolution s1() {
    wop::WopSolution s;
    s.assignments["b1"] = {"floor", 0, 0};
    s.assignments["a1"] = {"floor", 1, 0};
    s.assignments["a3"] = {"floor", 1, 1};
    s.assignments["a2"] = {"shelf", 0, 0};
    return s;
}

}  // namespace fixtures
