#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "pdd/patterns.hpp"

namespace pdd {

struct AnalysisConfig {
    double tau = 1.96;  // two-sided 95%; presets: 1.44 ("85%"), 1.28 ("80%")
    int max_ds = 5;
    ArFormula formula = ArFormula::Standard;
    SubgroupMode subgroup_mode = SubgroupMode::Components;
};

struct GroupRecord {
    PatternGroup group;
    std::vector<SubPatternGroup> subgroups;
};

struct TargetValuePatterns {
    int target_av = -1;
    std::string value;
    std::int64_t occ = 0;
    bool degenerate = false;  // zero occurrence in the data
    std::vector<AvaRecord> frequent;
    std::vector<AvaRecord> rare;
};

struct PatternCoverage {
    int target_av = -1;
    int partner_av = -1;
    std::vector<int> records;
};

// The complete, auditable output of one analysis run. Every reported number
// is recomputable from the stored counts and spectra.
struct KnowledgeBase {
    int format_version = 1;
    AnalysisConfig config;

    std::string source;
    std::size_t records = 0;
    std::size_t dropped = 0;
    std::uint64_t fingerprint = 0;

    std::vector<DiscAttribute> attributes;
    std::vector<AttributeProvenance> provenance;
    AvIndex av_index;
    ContingencyModel contingency;

    std::vector<double> eigenvalues;                     // all T, by descending magnitude
    std::vector<std::pair<int, int>> significant_ar;     // |AR| > tau cells, i < j
    std::vector<DisentangledSpace> spaces;               // retained
    std::vector<GroupRecord> groups;

    std::string target_attribute;
    std::vector<TargetValuePatterns> targets;
    std::vector<PatternCoverage> coverage;

    std::size_t frequent_count() const;
    std::size_t rare_count() const;
};

// Full pipeline: counts -> ARV -> spectra -> spaces -> groups -> classified
// target associations with record coverage.
KnowledgeBase analyze(const DiscretizedTable& table, const std::string& target_attribute,
                      const AnalysisConfig& config, const std::string& source = "");

// Target-linked classification grouped per target value; exposed separately
// from analyze() so callers can rerun extraction against other attributes.
std::vector<TargetValuePatterns> extract_target_patterns(
    const DiscretizedTable& table, const AvIndex& index, const ContingencyModel& model,
    const std::vector<DisentangledSpace>& spaces, const std::vector<GroupRecord>& groups,
    const std::string& target_attribute, const AnalysisConfig& config);

nlohmann::ordered_json kb_to_json(const KnowledgeBase& kb);
KnowledgeBase kb_from_json(const nlohmann::json& doc);  // throws BadKnowledgeBase
void save_kb(const KnowledgeBase& kb, const std::string& path);
KnowledgeBase load_kb(const std::string& path);

}  // namespace pdd
