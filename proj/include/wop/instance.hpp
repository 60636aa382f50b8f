#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "wop/error.hpp"

namespace wop {

enum class LocationKind { Floor, Shelf };

struct Location {
    std::string id;
    std::int64_t capacity = 0;  // area units
    LocationKind kind = LocationKind::Floor;
    std::int64_t base_place_time = 0;  // seconds for a ground placement
    std::int64_t per_level_time = 0;   // seconds added per height level
};

struct ItemType {
    std::string id;
    std::int64_t area = 0;
    bool shelf_allowed = true;
    std::int64_t max_stack_height = 1;  // 1 = non-stackable
};

struct Item {
    std::string id;
    std::string type_id;
};

struct Instance {
    std::string name;
    std::vector<Location> locations;
    std::vector<ItemType> item_types;
    std::vector<Item> items;
};

// An item may sit at a location iff the location is floor-type or the
// item's type is shelf enabled.
inline bool eligible(const ItemType& type, const Location& loc) {
    return loc.kind == LocationKind::Floor || type.shelf_allowed;
}

// Id lookups over a validated instance. Duplicate ids keep the first entry;
// validate_instance reports them.
class InstanceIndex {
public:
    explicit InstanceIndex(const Instance& instance);

    const Location& location(const std::string& id) const;
    const ItemType& item_type(const std::string& id) const;
    const Item& item(const std::string& id) const;
    const ItemType& type_of(const Item& item) const { return item_type(item.type_id); }
    const ItemType& type_of_item(const std::string& item_id) const { return type_of(item(item_id)); }

    bool has_item(const std::string& id) const { return items_.count(id) > 0; }
    bool has_location(const std::string& id) const { return locations_.count(id) > 0; }

    const Instance& instance() const { return *instance_; }

private:
    const Instance* instance_;
    std::unordered_map<std::string, std::size_t> locations_;
    std::unordered_map<std::string, std::size_t> types_;
    std::unordered_map<std::string, std::size_t> items_;
};

// JSON document format:
//   {name, locations:[{id,capacity,kind,base_place_time,per_level_time}],
//    item_types:[{id,area,shelf_allowed,max_stack_height}], items:[{id,type}]}
// Unknown keys are rejected.
nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

}  // namespace wop
