#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pdd/discretize.hpp"
#include "pdd/matrix.hpp"

namespace pdd {

// Global enumeration of the T distinct attribute values, in schema order and
// declared value order.
struct AvIndex {
    struct Entry {
        std::string attribute;
        std::string value;
        int attr_id;
    };

    std::vector<Entry> entries;
    std::vector<std::pair<int, int>> attribute_span;  // attr id -> [first, last) av index

    std::size_t size() const { return entries.size(); }
    int attribute_of(int av) const { return entries[av].attr_id; }
    bool cross_attribute(int a, int b) const { return attribute_of(a) != attribute_of(b); }
    int lookup(const std::string& attribute, const std::string& value) const;  // -1 if absent
    std::string display(int av) const { return entries[av].attribute + "=" + entries[av].value; }
};

// Exact single and pairwise occurrence counts. Pair counts are symmetric;
// within-attribute cells stay zero (values of one attribute are mutually
// exclusive per record).
struct ContingencyModel {
    std::size_t records = 0;  // M
    std::vector<std::int64_t> occ;
    std::vector<std::int64_t> occ_pair;  // dense T*T
    std::size_t dim = 0;

    std::int64_t pair(int a, int b) const { return occ_pair[static_cast<std::size_t>(a) * dim + b]; }
    std::int64_t& pair_ref(int a, int b) { return occ_pair[static_cast<std::size_t>(a) * dim + b]; }
};

std::pair<AvIndex, ContingencyModel> build_contingency(const DiscretizedTable& table);

double support(const ContingencyModel& model, int av1, int av2);
// Directed av1 -> av2: Occ(pair) / Occ(av2), i.e. how likely av1 occurs when
// av2 occurs.
double confidence(const ContingencyModel& model, int av1, int av2);
double expected(const ContingencyModel& model, int av1, int av2);

enum class ArFormula {
    Standard,     // both marginal factors inside the square root
    LiteralPrint  // (O-E)/sqrt(E) * (1 - (Occ1/M)(Occ2/M))
};

struct ArValue {
    double value = 0.0;
    bool degenerate = false;  // a margin is 0 or M: variance term vanishes
};

ArValue adjusted_residual(const ContingencyModel& model, int av1, int av2,
                          ArFormula formula = ArFormula::Standard);

// T x T symmetric matrix of adjusted residuals over cross-attribute AV pairs;
// within-attribute blocks (and the diagonal) are exactly zero.
Matrix build_arv(const AvIndex& index, const ContingencyModel& model,
                 ArFormula formula = ArFormula::Standard);

}  // namespace pdd
