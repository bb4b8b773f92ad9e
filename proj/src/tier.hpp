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

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace treelint {

enum class AttributePolicy { none, names, names_and_values };

const char* attribute_policy_name(AttributePolicy policy);

// One extraction tier: which repeating element starts an entry and which
// descendant branches collapse to a single token.
struct TierSpec {
    std::string name;
    std::string entry_element;
    std::set<std::string> collapse_elements;
    AttributePolicy attribute_policy = AttributePolicy::none;
    // Absent means every attribute participates under the active policy.
    std::optional<std::set<std::string>> attribute_allowlist;
    bool keep_prefix = false;
};

// Parses {"tiers":[{"name":...,"entry_element":...,"collapse":[...],
// "attribute_policy":...,"attribute_allowlist":...,"keep_prefix":...}]}.
// Raises ConfigError naming the offending key on malformed input, and when
// entry_element appears in its own collapse set.
std::vector<TierSpec> parse_tier_config(const std::string& json_text);

// Looks a tier up by name; ConfigError listing the available tiers on miss.
const TierSpec& find_tier(const std::vector<TierSpec>& tiers, const std::string& name);

}  // namespace treelint
