#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pdd/table.hpp"

namespace pdd {

// Realized content of one bin over the data it was fitted on.
struct BinRealization {
    std::string label;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
    bool empty = true;
};

struct AttributeProvenance {
    std::string attribute;
    BinSpec::Mode mode = BinSpec::Mode::LevelMap;
    std::vector<double> cutpoints;                 // realized (equal-frequency) or given
    std::vector<BinRealization> bins;              // numeric modes
    std::map<std::string, std::string> level_map;  // level-map mode
};

struct DiscAttribute {
    std::string name;
    Role role = Role::Feature;
    std::vector<std::string> labels;  // final ordered label set
};

// Fully categorical table: every cell is a code into its attribute's label
// set. This is the shape every analysis stage consumes.
struct DiscretizedTable {
    std::vector<DiscAttribute> attributes;
    std::vector<std::vector<std::int32_t>> codes;  // [attribute][record]
    std::size_t records = 0;
    std::size_t dropped = 0;
    std::vector<AttributeProvenance> provenance;

    int attribute_index(const std::string& name) const;
    // Content hash used to detect mismatched inputs across pipeline stages.
    std::uint64_t fingerprint() const;
};

// Boundaries for k near-equal-count bins. Boundaries sit midway between
// adjacent distinct sorted values; duplicates of a value always share a bin.
// Throws TooFewDistinct when fewer than k distinct values exist.
std::vector<double> equal_frequency_cutpoints(std::vector<double> values, int k);

// Bin index of `v` given increasing cutpoints: the number of cutpoints
// strictly below v (values equal to a cutpoint fall left).
std::size_t bin_of(double v, const std::vector<double>& cutpoints);

std::vector<std::string> apply_level_map(const std::vector<std::string>& values,
                                         const BinSpec& spec);

// Closed-interval display label "[lo,hi]" used when a numeric BinSpec does
// not name its bins.
std::string interval_label(double lo, double hi);

DiscretizedTable discretize_table(const DatasetTable& table);

// Reinterpret an already categorical table (e.g. one written by the
// discretize command) without touching any cells.
DiscretizedTable categorical_view(const DatasetTable& table);

}  // namespace pdd
