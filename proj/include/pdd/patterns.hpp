#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdd/contingency.hpp"
#include "pdd/spectral.hpp"

namespace pdd {

enum class SubgroupMode { Components, Cliques };

// AVs sharing loading polarity within one disentangled space, restricted to
// those carrying at least one significant cross-attribute RAR entry there.
struct PatternGroup {
    int ds_id = 0;
    int pg_id = 0;  // 1 = positive loadings, 2 = negative
    std::vector<int> members;

    std::string name() const {
        return "DS" + std::to_string(ds_id) + "_PG" + std::to_string(pg_id);
    }
};

struct SubPatternGroup {
    int subpg_id = 0;
    std::vector<int> members;
    // Set when a lone member's significant partners all sit in the opposite
    // polarity group of the same space.
    bool cross_polarity = false;
};

enum class AvaClass { Frequent, Rare, Insignificant };

const char* ava_class_name(AvaClass cls);

// One classified attribute-value association.
struct AvaRecord {
    int av1 = -1;  // partner AV in target tables
    int av2 = -1;  // target AV in target tables
    double support = 0.0;
    double confidence = 0.0;  // Occ(pair)/Occ(av1): av2 given av1
    double ar = 0.0;
    bool ar_degenerate = false;
    double best_rar = 0.0;
    int ds_id = 0;  // space attaining best_rar; 0 when no space is retained
    int pg_id = 0;
    int subpg_id = 0;
    std::int64_t count = 0;
    AvaClass classification = AvaClass::Insignificant;
};

std::vector<PatternGroup> form_pattern_groups(const std::vector<DisentangledSpace>& spaces,
                                              const AvIndex& index, double tau);

std::vector<SubPatternGroup> form_subgroups(const PatternGroup& group,
                                            const DisentangledSpace& space, const AvIndex& index,
                                            double tau,
                                            SubgroupMode mode = SubgroupMode::Components);

AvaRecord classify_ava(int av1, int av2, const ContingencyModel& model,
                       const std::vector<DisentangledSpace>& spaces, double tau,
                       ArFormula formula = ArFormula::Standard);

// Record ids on which every AV of the pattern holds.
std::vector<int> coverage(const std::vector<int>& pattern, const DiscretizedTable& table,
                          const AvIndex& index);
std::vector<int> coverage(const std::vector<std::pair<std::string, std::string>>& pattern,
                          const DiscretizedTable& table, const AvIndex& index);

}  // namespace pdd
