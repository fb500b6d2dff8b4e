#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace pdd {

enum class Kind { Categorical, Boolean, Ordinal, Numerical };
enum class Role { Feature, Target };

Kind kind_from_string(const std::string& token);
const char* kind_to_string(Kind kind);

// How an ordinal or numerical attribute becomes a finite label set.
struct BinSpec {
    enum class Mode { LevelMap, EqualFrequency, ExplicitCutpoints };

    Mode mode = Mode::LevelMap;
    std::map<std::string, std::string> level_map;  // source label -> target label
    int k = 0;                                     // equal-frequency bin count
    std::vector<double> cutpoints;                 // strictly increasing
    std::vector<std::string> labels;               // ordered; optional for numeric modes
};

const char* bin_mode_to_string(BinSpec::Mode mode);

struct AttributeSchema {
    std::string name;
    Kind kind = Kind::Categorical;
    Role role = Role::Feature;
    std::vector<std::string> allowed_values;  // ordered; required for ordinal
    std::optional<BinSpec> discretization;
};

struct Schema {
    std::vector<AttributeSchema> attributes;
    std::vector<std::string> missing_tokens = default_missing_tokens();

    static std::vector<std::string> default_missing_tokens() {
        return {"", "NA", "N/A", "-9", "."};
    }

    const AttributeSchema* find(const std::string& name) const;
    bool is_missing_token(const std::string& value) const;
};

Schema load_schema(const std::string& path);
Schema schema_from_json(const nlohmann::json& doc);
nlohmann::ordered_json schema_to_json(const Schema& schema);
void validate_schema(const Schema& schema);

// Final label order produced by a level map: explicit `labels` when given,
// otherwise first appearance of each target while scanning the declared
// source values in order.
std::vector<std::string> level_map_target_labels(const BinSpec& spec,
                                                 const std::vector<std::string>& source_order);

}  // namespace pdd
