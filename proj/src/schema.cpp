#include "pdd/schema.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "pdd/errors.hpp"

namespace pdd {

Kind kind_from_string(const std::string& token) {
    if (token == "categorical") return Kind::Categorical;
    if (token == "boolean") return Kind::Boolean;
    if (token == "ordinal") return Kind::Ordinal;
    if (token == "numerical") return Kind::Numerical;
    throw DataError(ErrorCode::UnknownKind, "unknown attribute kind '" + token + "'");
}

const char* kind_to_string(Kind kind) {
    switch (kind) {
        case Kind::Categorical: return "categorical";
        case Kind::Boolean: return "boolean";
        case Kind::Ordinal: return "ordinal";
        case Kind::Numerical: return "numerical";
    }
    return "?";
}

const char* bin_mode_to_string(BinSpec::Mode mode) {
    switch (mode) {
        case BinSpec::Mode::LevelMap: return "level_map";
        case BinSpec::Mode::EqualFrequency: return "equal_frequency";
        case BinSpec::Mode::ExplicitCutpoints: return "explicit_cutpoints";
    }
    return "?";
}

const AttributeSchema* Schema::find(const std::string& name) const {
    for (const auto& attr : attributes)
        if (attr.name == name) return &attr;
    return nullptr;
}

bool Schema::is_missing_token(const std::string& value) const {
    return std::find(missing_tokens.begin(), missing_tokens.end(), value) != missing_tokens.end();
}

namespace {

BinSpec binspec_from_json(const nlohmann::json& doc, const std::string& attr_name) {
    BinSpec spec;
    const std::string mode = doc.value("mode", "");
    if (mode == "level_map") {
        spec.mode = BinSpec::Mode::LevelMap;
        if (!doc.contains("map") || !doc.at("map").is_object())
            throw DataError(ErrorCode::ParseFailure,
                            "attribute '" + attr_name + "': level_map requires a 'map' object");
        for (const auto& [key, val] : doc.at("map").items())
            spec.level_map[key] = val.get<std::string>();
    } else if (mode == "equal_frequency") {
        spec.mode = BinSpec::Mode::EqualFrequency;
        spec.k = doc.value("k", 0);
    } else if (mode == "explicit_cutpoints") {
        spec.mode = BinSpec::Mode::ExplicitCutpoints;
        if (doc.contains("cutpoints"))
            spec.cutpoints = doc.at("cutpoints").get<std::vector<double>>();
    } else {
        throw DataError(ErrorCode::ParseFailure,
                        "attribute '" + attr_name + "': unknown discretization mode '" + mode + "'");
    }
    if (doc.contains("labels")) spec.labels = doc.at("labels").get<std::vector<std::string>>();
    return spec;
}

nlohmann::ordered_json binspec_to_json(const BinSpec& spec) {
    nlohmann::ordered_json doc;
    doc["mode"] = bin_mode_to_string(spec.mode);
    switch (spec.mode) {
        case BinSpec::Mode::LevelMap: {
            nlohmann::ordered_json map = nlohmann::ordered_json::object();
            for (const auto& [src, dst] : spec.level_map) map[src] = dst;
            doc["map"] = std::move(map);
            break;
        }
        case BinSpec::Mode::EqualFrequency:
            doc["k"] = spec.k;
            break;
        case BinSpec::Mode::ExplicitCutpoints:
            doc["cutpoints"] = spec.cutpoints;
            break;
    }
    if (!spec.labels.empty()) doc["labels"] = spec.labels;
    return doc;
}

void validate_binspec(const AttributeSchema& attr) {
    const BinSpec& spec = *attr.discretization;
    const std::string where = "attribute '" + attr.name + "'";
    switch (spec.mode) {
        case BinSpec::Mode::LevelMap: {
            if (spec.level_map.empty())
                throw DataError(ErrorCode::ParseFailure, where + ": empty level map");
            // Every declared source value must be covered exactly once.
            for (const auto& src : attr.allowed_values)
                if (!spec.level_map.count(src))
                    throw DataError(ErrorCode::UnmappedLevel,
                                    where + ": source value '" + src + "' has no mapping");
            for (const auto& [src, dst] : spec.level_map) {
                (void)dst;
                if (!attr.allowed_values.empty() &&
                    std::find(attr.allowed_values.begin(), attr.allowed_values.end(), src) ==
                        attr.allowed_values.end())
                    throw DataError(ErrorCode::InvalidValue,
                                    where + ": level map names unknown source value '" + src + "'");
            }
            if (!spec.labels.empty()) {
                std::set<std::string> targets;
                for (const auto& [src, dst] : spec.level_map) targets.insert(dst);
                std::set<std::string> declared(spec.labels.begin(), spec.labels.end());
                if (targets != declared)
                    throw DataError(ErrorCode::ParseFailure,
                                    where + ": declared labels do not match level-map targets");
            }
            break;
        }
        case BinSpec::Mode::EqualFrequency:
            if (spec.k < 2)
                throw DataError(ErrorCode::ParseFailure, where + ": equal_frequency requires k >= 2");
            if (!spec.labels.empty() && static_cast<int>(spec.labels.size()) != spec.k)
                throw DataError(ErrorCode::ParseFailure,
                                where + ": label count does not match bin count");
            break;
        case BinSpec::Mode::ExplicitCutpoints:
            if (spec.cutpoints.empty())
                throw DataError(ErrorCode::ParseFailure, where + ": explicit_cutpoints requires cutpoints");
            for (std::size_t i = 1; i < spec.cutpoints.size(); ++i)
                if (!(spec.cutpoints[i - 1] < spec.cutpoints[i]))
                    throw DataError(ErrorCode::ParseFailure,
                                    where + ": cutpoints must be strictly increasing");
            if (!spec.labels.empty() && spec.labels.size() != spec.cutpoints.size() + 1)
                throw DataError(ErrorCode::ParseFailure,
                                where + ": label count does not match bin count");
            break;
    }
}

}  // namespace

std::vector<std::string> level_map_target_labels(const BinSpec& spec,
                                                 const std::vector<std::string>& source_order) {
    if (!spec.labels.empty()) return spec.labels;
    std::vector<std::string> order;
    auto add = [&](const std::string& label) {
        if (std::find(order.begin(), order.end(), label) == order.end()) order.push_back(label);
    };
    for (const auto& src : source_order) {
        auto it = spec.level_map.find(src);
        if (it != spec.level_map.end()) add(it->second);
    }
    // Targets for sources outside the declared order (undeclared value sets).
    for (const auto& [src, dst] : spec.level_map) {
        (void)src;
        add(dst);
    }
    return order;
}

void validate_schema(const Schema& schema) {
    std::set<std::string> seen;
    for (const auto& attr : schema.attributes) {
        if (!seen.insert(attr.name).second)
            throw DataError(ErrorCode::DuplicateAttribute,
                            "attribute name '" + attr.name + "' declared twice");
        if (attr.kind == Kind::Ordinal && attr.allowed_values.empty())
            throw DataError(ErrorCode::ParseFailure,
                            "ordinal attribute '" + attr.name + "' must declare ordered values");
        std::set<std::string> vals;
        for (const auto& v : attr.allowed_values)
            if (!vals.insert(v).second)
                throw DataError(ErrorCode::InvalidValue,
                                "attribute '" + attr.name + "': duplicate allowed value '" + v + "'");
        if (attr.discretization) validate_binspec(attr);
    }
}

Schema schema_from_json(const nlohmann::json& doc) {
    Schema schema;
    if (doc.contains("missing_values"))
        schema.missing_tokens = doc.at("missing_values").get<std::vector<std::string>>();
    if (!doc.contains("attributes") || !doc.at("attributes").is_array())
        throw DataError(ErrorCode::ParseFailure, "schema document must contain an 'attributes' array");
    for (const auto& item : doc.at("attributes")) {
        AttributeSchema attr;
        if (!item.contains("name"))
            throw DataError(ErrorCode::ParseFailure, "schema attribute without a name");
        attr.name = item.at("name").get<std::string>();
        attr.kind = kind_from_string(item.value("kind", "categorical"));
        const std::string role = item.value("role", "feature");
        if (role == "target")
            attr.role = Role::Target;
        else if (role == "feature")
            attr.role = Role::Feature;
        else
            throw DataError(ErrorCode::ParseFailure,
                            "attribute '" + attr.name + "': unknown role '" + role + "'");
        if (item.contains("values"))
            attr.allowed_values = item.at("values").get<std::vector<std::string>>();
        if (item.contains("discretize"))
            attr.discretization = binspec_from_json(item.at("discretize"), attr.name);
        schema.attributes.push_back(std::move(attr));
    }
    validate_schema(schema);
    return schema;
}

Schema load_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError(ErrorCode::ParseFailure, "cannot open schema file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(ErrorCode::ParseFailure, "schema file " + path + ": " + e.what());
    }
    return schema_from_json(doc);
}

nlohmann::ordered_json schema_to_json(const Schema& schema) {
    nlohmann::ordered_json doc;
    doc["missing_values"] = schema.missing_tokens;
    nlohmann::ordered_json attrs = nlohmann::ordered_json::array();
    for (const auto& attr : schema.attributes) {
        nlohmann::ordered_json a;
        a["name"] = attr.name;
        a["kind"] = kind_to_string(attr.kind);
        a["role"] = attr.role == Role::Target ? "target" : "feature";
        if (!attr.allowed_values.empty()) a["values"] = attr.allowed_values;
        if (attr.discretization) a["discretize"] = binspec_to_json(*attr.discretization);
        attrs.push_back(std::move(a));
    }
    doc["attributes"] = std::move(attrs);
    return doc;
}

}  // namespace pdd
