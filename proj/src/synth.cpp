#include "pdd/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "pdd/errors.hpp"
#include "pdd/rng.hpp"

namespace pdd {

void validate_generator_spec(const GeneratorSpec& spec) {
    if (spec.records == 0)
        throw DataError(ErrorCode::BadGeneratorSpec, "record count must be positive");
    if (spec.target_values.empty())
        throw DataError(ErrorCode::BadGeneratorSpec, "target needs at least one value");
    if (spec.target_values.size() != spec.proportions.size())
        throw DataError(ErrorCode::BadGeneratorSpec, "one proportion per target value required");
    double sum = 0.0;
    for (double p : spec.proportions) {
        if (p < 0.0) throw DataError(ErrorCode::BadGeneratorSpec, "negative class proportion");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw DataError(ErrorCode::BadGeneratorSpec, "class proportions must sum to 1");

    std::set<std::string> names{spec.target_name};
    std::map<std::string, int> value_count;
    for (const auto& attr : spec.attributes) {
        if (!names.insert(attr.name).second)
            throw DataError(ErrorCode::BadGeneratorSpec, "duplicate attribute '" + attr.name + "'");
        if (attr.value_count < 2)
            throw DataError(ErrorCode::BadGeneratorSpec,
                            "attribute '" + attr.name + "' needs at least two values");
        value_count[attr.name] = attr.value_count;
    }
    for (const auto& block : spec.blocks) {
        if (std::find(spec.target_values.begin(), spec.target_values.end(), block.target_value) ==
            spec.target_values.end())
            throw DataError(ErrorCode::BadGeneratorSpec,
                            "block targets unknown value '" + block.target_value + "'");
        if (!(block.p_in > 0.5 && block.p_in <= 1.0))
            throw DataError(ErrorCode::BadGeneratorSpec, "block p_in must lie in (0.5, 1]");
        std::set<std::string> block_attrs;
        for (const auto& [attr, value] : block.partners) {
            auto it = value_count.find(attr);
            if (it == value_count.end())
                throw DataError(ErrorCode::BadGeneratorSpec,
                                "block references unknown attribute '" + attr + "'");
            bool known = false;
            for (int i = 0; i < it->second; ++i)
                if (GeneratorSpec::value_label(i) == value) known = true;
            if (!known)
                throw DataError(ErrorCode::BadGeneratorSpec,
                                "block references unknown value " + attr + "=" + value);
            if (!block_attrs.insert(attr).second)
                throw DataError(ErrorCode::BadGeneratorSpec,
                                "block plants two values of attribute '" + attr + "'");
        }
    }
}

GeneratorSpec generator_spec_from_json(const nlohmann::json& doc) {
    try {
        GeneratorSpec spec;
        spec.seed = doc.value("seed", 0ULL);
        spec.records = doc.at("records").get<std::size_t>();
        const auto& target = doc.at("target");
        spec.target_name = target.at("name").get<std::string>();
        spec.target_values = target.at("values").get<std::vector<std::string>>();
        spec.proportions = target.at("proportions").get<std::vector<double>>();
        for (const auto& a : doc.at("attributes"))
            spec.attributes.push_back(
                {a.at("name").get<std::string>(), a.at("values").get<int>()});
        if (doc.contains("blocks"))
            for (const auto& b : doc.at("blocks")) {
                GeneratorSpec::Block block;
                block.target_value = b.at("target_value").get<std::string>();
                block.p_in = b.at("p_in").get<double>();
                for (const auto& partner : b.at("partners"))
                    block.partners.emplace_back(partner[0].get<std::string>(),
                                                partner[1].get<std::string>());
                spec.blocks.push_back(std::move(block));
            }
        validate_generator_spec(spec);
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(ErrorCode::BadGeneratorSpec, e.what());
    }
}

nlohmann::ordered_json generator_spec_to_json(const GeneratorSpec& spec) {
    nlohmann::ordered_json doc;
    doc["seed"] = spec.seed;
    doc["records"] = spec.records;
    nlohmann::ordered_json target;
    target["name"] = spec.target_name;
    target["values"] = spec.target_values;
    target["proportions"] = spec.proportions;
    doc["target"] = std::move(target);
    nlohmann::ordered_json attrs = nlohmann::ordered_json::array();
    for (const auto& attr : spec.attributes) {
        nlohmann::ordered_json a;
        a["name"] = attr.name;
        a["values"] = attr.value_count;
        attrs.push_back(std::move(a));
    }
    doc["attributes"] = std::move(attrs);
    nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
    for (const auto& block : spec.blocks) {
        nlohmann::ordered_json b;
        b["target_value"] = block.target_value;
        b["p_in"] = block.p_in;
        nlohmann::ordered_json partners = nlohmann::ordered_json::array();
        for (const auto& [attr, value] : block.partners) partners.push_back({attr, value});
        b["partners"] = std::move(partners);
        blocks.push_back(std::move(b));
    }
    doc["blocks"] = std::move(blocks);
    return doc;
}

GeneratorSpec load_generator_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError(ErrorCode::BadGeneratorSpec, "cannot open spec file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(ErrorCode::BadGeneratorSpec, e.what());
    }
    return generator_spec_from_json(doc);
}

nlohmann::ordered_json truth_to_json(const PlantedTruth& truth) {
    nlohmann::ordered_json doc;
    doc["table_fingerprint"] = truth.table_fingerprint;
    nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
    for (const auto& block : truth.blocks) {
        nlohmann::ordered_json avas = nlohmann::ordered_json::array();
        for (const auto& ava : block) {
            nlohmann::ordered_json a;
            a["target_value"] = ava.target_value;
            a["attribute"] = ava.attribute;
            a["value"] = ava.value;
            avas.push_back(std::move(a));
        }
        blocks.push_back(std::move(avas));
    }
    doc["blocks"] = std::move(blocks);
    return doc;
}

std::pair<DiscretizedTable, PlantedTruth> generate(const GeneratorSpec& spec) {
    validate_generator_spec(spec);

    DiscretizedTable table;
    table.records = spec.records;

    DiscAttribute target;
    target.name = spec.target_name;
    target.role = Role::Target;
    target.labels = spec.target_values;
    table.attributes.push_back(std::move(target));
    for (const auto& attr : spec.attributes) {
        DiscAttribute a;
        a.name = attr.name;
        a.role = Role::Feature;
        for (int i = 0; i < attr.value_count; ++i) a.labels.push_back(GeneratorSpec::value_label(i));
        table.attributes.push_back(std::move(a));
    }
    table.codes.assign(table.attributes.size(), std::vector<std::int32_t>(spec.records, 0));

    // Planted value per (class code, attribute position), -1 when unplanted.
    const std::size_t n_attrs = spec.attributes.size();
    std::vector<std::vector<int>> planted(spec.target_values.size(),
                                          std::vector<int>(n_attrs, -1));
    std::vector<std::vector<double>> adherence(spec.target_values.size(),
                                               std::vector<double>(n_attrs, 0.0));
    auto attr_position = [&](const std::string& name) {
        for (std::size_t a = 0; a < n_attrs; ++a)
            if (spec.attributes[a].name == name) return a;
        throw DataError(ErrorCode::BadGeneratorSpec, "unknown attribute '" + name + "'");
    };
    auto class_code = [&](const std::string& value) {
        for (std::size_t c = 0; c < spec.target_values.size(); ++c)
            if (spec.target_values[c] == value) return c;
        throw DataError(ErrorCode::BadGeneratorSpec, "unknown target value '" + value + "'");
    };
    for (const auto& block : spec.blocks) {
        const std::size_t cls = class_code(block.target_value);
        for (const auto& [attr, value] : block.partners) {
            const std::size_t pos = attr_position(attr);
            const int code = std::stoi(value.substr(1)) - 1;
            planted[cls][pos] = code;
            adherence[cls][pos] = block.p_in;
        }
    }

    std::vector<double> cumulative(spec.proportions.size());
    double acc = 0.0;
    for (std::size_t c = 0; c < spec.proportions.size(); ++c) {
        acc += spec.proportions[c];
        cumulative[c] = acc;
    }
    cumulative.back() = 1.0;

    // One substream per record: generation order cannot change the table.
    for (std::size_t r = 0; r < spec.records; ++r) {
        SplitMix64 rng(derive_stream_seed(spec.seed, r));
        const double u = rng.next_double();
        std::size_t cls = 0;
        while (cls + 1 < cumulative.size() && u >= cumulative[cls]) ++cls;
        table.codes[0][r] = static_cast<std::int32_t>(cls);
        for (std::size_t a = 0; a < n_attrs; ++a) {
            const int value_count = spec.attributes[a].value_count;
            std::int32_t code;
            if (planted[cls][a] >= 0 && rng.next_double() < adherence[cls][a])
                code = planted[cls][a];
            else
                code = static_cast<std::int32_t>(rng.next_below(value_count));
            table.codes[a + 1][r] = code;
        }
    }

    PlantedTruth truth;
    for (const auto& block : spec.blocks) {
        std::vector<PlantedTruth::Ava> avas;
        for (const auto& [attr, value] : block.partners)
            avas.push_back({block.target_value, attr, value});
        truth.blocks.push_back(std::move(avas));
    }
    truth.table_fingerprint = table.fingerprint();
    return {std::move(table), std::move(truth)};
}

Schema generated_schema(const GeneratorSpec& spec) {
    Schema schema;
    AttributeSchema target;
    target.name = spec.target_name;
    target.kind = Kind::Categorical;
    target.role = Role::Target;
    target.allowed_values = spec.target_values;
    schema.attributes.push_back(std::move(target));
    for (const auto& attr : spec.attributes) {
        AttributeSchema a;
        a.name = attr.name;
        a.kind = Kind::Categorical;
        a.role = Role::Feature;
        for (int i = 0; i < attr.value_count; ++i)
            a.allowed_values.push_back(GeneratorSpec::value_label(i));
        schema.attributes.push_back(std::move(a));
    }
    return schema;
}

RecoveryReport evaluate_recovery(const KnowledgeBase& kb, const PlantedTruth& truth) {
    if (truth.table_fingerprint != kb.fingerprint)
        throw DataError(ErrorCode::InconsistentInputs,
                        "planted truth and knowledge base come from different tables");
    RecoveryReport report;
    if (truth.blocks.empty()) {
        report.empty_truth = true;
        return report;
    }
    for (const auto& block : truth.blocks) {
        RecoveryReport::BlockScore score;
        score.planted = block.size();
        std::set<std::pair<std::string, std::string>> planted_partners;
        std::string target_value;
        for (const auto& ava : block) {
            planted_partners.emplace(ava.attribute, ava.value);
            target_value = ava.target_value;
        }
        for (const auto& tv : kb.targets) {
            if (tv.value != target_value) continue;
            score.reported = tv.frequent.size();
            for (const auto& rec : tv.frequent) {
                const auto& entry = kb.av_index.entries[rec.av1];
                if (planted_partners.count({entry.attribute, entry.value})) ++score.recovered;
            }
        }
        score.recall = score.planted ? static_cast<double>(score.recovered) / score.planted : 0.0;
        score.precision =
            score.reported ? static_cast<double>(score.recovered) / score.reported : 0.0;
        report.blocks.push_back(score);
    }
    return report;
}

}  // namespace pdd
