#include "wop/instance.hpp"

#include <fstream>

namespace wop {

namespace {

using nlohmann::json;

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

std::int64_t get_int(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key)) throw Error("parse-error", "missing key '" + std::string(key) + "' in " + ctx);
    const json& v = j.at(key);
    if (!v.is_number_integer()) {
        throw Error("parse-error", "key '" + std::string(key) + "' in " + ctx + " must be an integer");
    }
    return v.get<std::int64_t>();
}

std::string get_str(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key)) throw Error("parse-error", "missing key '" + std::string(key) + "' in " + ctx);
    const json& v = j.at(key);
    if (!v.is_string()) throw Error("parse-error", "key '" + std::string(key) + "' in " + ctx + " must be a string");
    return v.get<std::string>();
}

}  // namespace

InstanceIndex::InstanceIndex(const Instance& instance) : instance_(&instance) {
    for (std::size_t i = 0; i < instance.locations.size(); ++i) locations_.emplace(instance.locations[i].id, i);
    for (std::size_t i = 0; i < instance.item_types.size(); ++i) types_.emplace(instance.item_types[i].id, i);
    for (std::size_t i = 0; i < instance.items.size(); ++i) items_.emplace(instance.items[i].id, i);
}

const Location& InstanceIndex::location(const std::string& id) const {
    auto it = locations_.find(id);
    if (it == locations_.end()) throw Error("unknown-location", "no location with id '" + id + "'");
    return instance_->locations[it->second];
}

const ItemType& InstanceIndex::item_type(const std::string& id) const {
    auto it = types_.find(id);
    if (it == types_.end()) throw Error("unknown-type", "no item type with id '" + id + "'");
    return instance_->item_types[it->second];
}

const Item& InstanceIndex::item(const std::string& id) const {
    auto it = items_.find(id);
    if (it == items_.end()) throw Error("unknown-item", "no item with id '" + id + "'");
    return instance_->items[it->second];
}

json instance_to_json(const Instance& instance) {
    json locations = json::array();
    for (const Location& l : instance.locations) {
        locations.push_back({{"id", l.id},
                             {"capacity", l.capacity},
                             {"kind", l.kind == LocationKind::Floor ? "floor" : "shelf"},
                             {"base_place_time", l.base_place_time},
                             {"per_level_time", l.per_level_time}});
    }
    json types = json::array();
    for (const ItemType& t : instance.item_types) {
        types.push_back({{"id", t.id},
                         {"area", t.area},
                         {"shelf_allowed", t.shelf_allowed},
                         {"max_stack_height", t.max_stack_height}});
    }
    json items = json::array();
    for (const Item& it : instance.items) {
        items.push_back({{"id", it.id}, {"type", it.type_id}});
    }
    return json{{"name", instance.name},
                {"locations", locations},
                {"item_types", types},
                {"items", items}};
}

Instance instance_from_json(const json& j) {
    if (!j.is_object()) throw Error("parse-error", "instance document must be an object");
    check_keys(j, {"name", "locations", "item_types", "items"}, "instance");
    Instance inst;
    inst.name = get_str(j, "name", "instance");
    if (!j.contains("locations") || !j.at("locations").is_array())
        throw Error("parse-error", "instance requires a 'locations' array");
    if (!j.contains("item_types") || !j.at("item_types").is_array())
        throw Error("parse-error", "instance requires an 'item_types' array");
    if (!j.contains("items") || !j.at("items").is_array())
        throw Error("parse-error", "instance requires an 'items' array");

    for (const json& lj : j.at("locations")) {
        check_keys(lj, {"id", "capacity", "kind", "base_place_time", "per_level_time"}, "location");
        Location l;
        l.id = get_str(lj, "id", "location");
        l.capacity = get_int(lj, "capacity", "location " + l.id);
        std::string kind = get_str(lj, "kind", "location " + l.id);
        if (kind == "floor") {
            l.kind = LocationKind::Floor;
        } else if (kind == "shelf") {
            l.kind = LocationKind::Shelf;
        } else {
            throw Error("parse-error", "location kind must be 'floor' or 'shelf', got '" + kind + "'");
        }
        l.base_place_time = get_int(lj, "base_place_time", "location " + l.id);
        l.per_level_time = get_int(lj, "per_level_time", "location " + l.id);
        inst.locations.push_back(std::move(l));
    }
    for (const json& tj : j.at("item_types")) {
        check_keys(tj, {"id", "area", "shelf_allowed", "max_stack_height"}, "item_type");
        ItemType t;
        t.id = get_str(tj, "id", "item_type");
        t.area = get_int(tj, "area", "item_type " + t.id);
        if (!tj.contains("shelf_allowed") || !tj.at("shelf_allowed").is_boolean())
            throw Error("parse-error", "item_type " + t.id + " requires boolean 'shelf_allowed'");
        t.shelf_allowed = tj.at("shelf_allowed").get<bool>();
        t.max_stack_height = get_int(tj, "max_stack_height", "item_type " + t.id);
        inst.item_types.push_back(std::move(t));
    }
    for (const json& ij : j.at("items")) {
        check_keys(ij, {"id", "type"}, "item");
        Item it;
        it.id = get_str(ij, "id", "item");
        it.type_id = get_str(ij, "type", "item " + it.id);
        inst.items.push_back(std::move(it));
    }
    return inst;
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("io-error", "cannot open '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("parse-error", std::string(e.what()) + " in '" + path.string() + "'");
    }
    return instance_from_json(j);
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("io-error", "cannot write '" + path.string() + "'");
    out << instance_to_json(instance).dump(2) << "\n";
}

}  // namespace wop
