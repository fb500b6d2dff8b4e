#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdd/contingency.hpp"
#include "pdd/discretize.hpp"
#include "pdd/kb.hpp"

namespace pdd {

// Cross-attribute itemset over AV indices (at most one AV per attribute),
// sorted ascending.
struct Itemset {
    std::vector<int> avs;
    std::int64_t count = 0;
    double support = 0.0;
};

struct RuleRecord {
    std::vector<int> antecedent;
    int consequent = -1;
    double support = 0.0;     // of antecedent + consequent
    double confidence = 0.0;  // support(all) / support(antecedent)
};

struct AprioriResult {
    std::vector<Itemset> itemsets;  // support >= minsup
    std::vector<RuleRecord> rules;  // confidence >= minconf
    std::uint64_t fingerprint = 0;
};

// Levelwise frequent-itemset search with the downward-closure prune, then
// single-consequent rule generation.
AprioriResult apriori(const DiscretizedTable& table, double minsup, double minconf,
                      int max_size = 2);

// Perfectly rare itemsets: support <= maxsup, count >= min_count, and every
// proper sub-itemset also at or below maxsup. max_size 0 means unbounded.
std::vector<Itemset> apriori_inverse(const DiscretizedTable& table, double maxsup,
                                     std::int64_t min_count, int max_size = 0);

// One ranked list of target-linked pairs per criterion.
struct CriterionRanking {
    std::string criterion;
    std::vector<AvaRecord> top;  // descending by the criterion
    int minority_hits = 0;       // entries whose target value is the minority class
};

struct ComparisonReport {
    struct ValueRankings {
        std::string value;
        std::vector<CriterionRanking> rankings;
    };

    std::string target_attribute;
    std::string minority_value;  // lowest-occurrence target value
    int top_n = 0;
    std::vector<CriterionRanking> rankings;          // pooled: support, confidence, ar, rar
    std::vector<ValueRankings> per_value;            // the same lists per target value
    std::vector<std::vector<int>> overlap;           // |top_i ∩ top_j| by pair key
};

ComparisonReport compare_criteria(const KnowledgeBase& kb, const AprioriResult& apriori_result,
                                  const std::string& target_attribute, int top_n);

}  // namespace pdd
