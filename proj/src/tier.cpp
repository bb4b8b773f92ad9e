// Copyright 2026 The treelint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tier.hpp"

#include <json.hpp>

#include "errors.hpp"

namespace treelint {

using nlohmann::json;

const char* attribute_policy_name(AttributePolicy policy) {
    switch (policy) {
        case AttributePolicy::none: return "none";
        case AttributePolicy::names: return "names";
        case AttributePolicy::names_and_values: return "names_and_values";
    }
    return "none";
}

namespace {

AttributePolicy parse_policy(const std::string& value, const std::string& where) {
    if (value == "none") return AttributePolicy::none;
    if (value == "names") return AttributePolicy::names;
    if (value == "names_and_values") return AttributePolicy::names_and_values;
    throw ConfigError(where + ": unknown attribute_policy '" + value +
                      "' (expected none, names, or names_and_values)");
}

std::string require_name_string(const json& node, const char* key, const std::string& where) {
    if (!node.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
    if (!node[key].is_string()) throw ConfigError(where + ": key '" + key + "' must be a string");
    std::string value = node[key].get<std::string>();
    if (value.empty()) throw ConfigError(where + ": key '" + key + "' must be non-empty");
    for (char c : value) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ':')
            throw ConfigError(where + ": key '" + key + "' must not contain whitespace or ':'");
    }
    return value;
}

TierSpec parse_one(const json& node, const std::string& where) {
    if (!node.is_object()) throw ConfigError(where + ": tier must be an object");
    TierSpec spec;
    spec.name = require_name_string(node, "name", where);
    spec.entry_element = require_name_string(node, "entry_element", where);

    if (node.contains("collapse")) {
        const json& collapse = node["collapse"];
        if (!collapse.is_array()) throw ConfigError(where + ": key 'collapse' must be an array");
        for (const json& item : collapse) {
            if (!item.is_string() || item.get<std::string>().empty())
                throw ConfigError(where + ": key 'collapse' must contain non-empty strings");
            auto [it, fresh] = spec.collapse_elements.insert(item.get<std::string>());
            if (!fresh)
                throw ConfigError(where + ": key 'collapse' lists '" + *it + "' twice");
        }
    }
    if (spec.collapse_elements.count(spec.entry_element))
        throw ConfigError(where + ": entry_element '" + spec.entry_element +
                          "' appears in its own collapse set");

    if (node.contains("attribute_policy")) {
        if (!node["attribute_policy"].is_string())
            throw ConfigError(where + ": key 'attribute_policy' must be a string");
        spec.attribute_policy = parse_policy(node["attribute_policy"].get<std::string>(), where);
    }

    if (node.contains("attribute_allowlist") && !node["attribute_allowlist"].is_null()) {
        const json& allow = node["attribute_allowlist"];
        if (!allow.is_array())
            throw ConfigError(where + ": key 'attribute_allowlist' must be an array or null");
        std::set<std::string> names;
        for (const json& item : allow) {
            if (!item.is_string())
                throw ConfigError(where + ": key 'attribute_allowlist' must contain strings");
            names.insert(item.get<std::string>());
        }
        spec.attribute_allowlist = std::move(names);
    }

    if (node.contains("keep_prefix")) {
        if (!node["keep_prefix"].is_boolean())
            throw ConfigError(where + ": key 'keep_prefix' must be a boolean");
        spec.keep_prefix = node["keep_prefix"].get<bool>();
    }
    return spec;
}

}  // namespace

std::vector<TierSpec> parse_tier_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("tier config is not valid JSON: ") + e.what());
    }
    if (!root.is_object() || !root.contains("tiers"))
        throw ConfigError("tier config: missing key 'tiers'");
    if (!root["tiers"].is_array() || root["tiers"].empty())
        throw ConfigError("tier config: key 'tiers' must be a non-empty array");

    std::vector<TierSpec> tiers;
    std::set<std::string> seen;
    for (size_t i = 0; i < root["tiers"].size(); ++i) {
        std::string where = "tier " + std::to_string(i);
        TierSpec spec = parse_one(root["tiers"][i], where);
        if (!seen.insert(spec.name).second)
            throw ConfigError(where + ": duplicate tier name '" + spec.name + "'");
        tiers.push_back(std::move(spec));
    }
    return tiers;
}

const TierSpec& find_tier(const std::vector<TierSpec>& tiers, const std::string& name) {
    for (const TierSpec& tier : tiers) {
        if (tier.name == name) return tier;
    }
    std::string available;
    for (const TierSpec& tier : tiers) {
        if (!available.empty()) available += ", ";
        available += tier.name;
    }
    throw ConfigError("unknown tier '" + name + "' (available: " + available + ")");
}

}  // namespace treelint
