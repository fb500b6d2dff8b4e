#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pdd/discretize.hpp"
#include "pdd/kb.hpp"

namespace pdd {

// Declarative description of a survey-like synthetic dataset with planted
// attribute-value association blocks and controllable class imbalance.
struct GeneratorSpec {
    struct Attr {
        std::string name;
        int value_count = 2;
    };
    struct Block {
        std::string target_value;
        std::vector<std::pair<std::string, std::string>> partners;  // (attribute, value)
        double p_in = 0.9;  // adherence probability within the block's class
    };

    std::uint64_t seed = 0;
    std::size_t records = 0;
    std::string target_name = "Class";
    std::vector<std::string> target_values;
    std::vector<double> proportions;  // same length as target_values, sums to 1
    std::vector<Attr> attributes;
    std::vector<Block> blocks;

    static std::string value_label(int i) { return "v" + std::to_string(i + 1); }
};

void validate_generator_spec(const GeneratorSpec& spec);
GeneratorSpec generator_spec_from_json(const nlohmann::json& doc);
nlohmann::ordered_json generator_spec_to_json(const GeneratorSpec& spec);
GeneratorSpec load_generator_spec(const std::string& path);

// The associations a correct miner should recover, one list per block.
struct PlantedTruth {
    struct Ava {
        std::string target_value;
        std::string attribute;
        std::string value;
    };
    std::vector<std::vector<Ava>> blocks;
    std::uint64_t table_fingerprint = 0;
};

nlohmann::ordered_json truth_to_json(const PlantedTruth& truth);

std::pair<DiscretizedTable, PlantedTruth> generate(const GeneratorSpec& spec);

// Schema document matching a generated table, for writing alongside the CSV.
Schema generated_schema(const GeneratorSpec& spec);

struct RecoveryReport {
    struct BlockScore {
        std::size_t planted = 0;
        std::size_t recovered = 0;   // planted AVAs classified frequent
        double recall = 0.0;
        std::size_t reported = 0;    // frequent AVAs for the block's target value
        double precision = 0.0;      // of those, the planted fraction
    };
    bool empty_truth = false;
    std::vector<BlockScore> blocks;
};

RecoveryReport evaluate_recovery(const KnowledgeBase& kb, const PlantedTruth& truth);

}  // namespace pdd
