#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pdd/contingency.hpp"
#include "pdd/discretize.hpp"
#include "pdd/rng.hpp"

namespace testutil {

// Build a DiscretizedTable from rows of labels. attrs[i] = (name, labels).
inline pdd::DiscretizedTable make_table(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& attrs,
    const std::vector<std::vector<std::string>>& rows) {
    pdd::DiscretizedTable table;
    table.records = rows.size();
    for (const auto& [name, labels] : attrs) {
        pdd::DiscAttribute attr;
        attr.name = name;
        attr.labels = labels;
        table.attributes.push_back(std::move(attr));
        table.codes.emplace_back();
    }
    for (const auto& row : rows) {
        for (std::size_t a = 0; a < attrs.size(); ++a) {
            const auto& labels = table.attributes[a].labels;
            const auto it = std::find(labels.begin(), labels.end(), row[a]);
            table.codes[a].push_back(static_cast<std::int32_t>(it - labels.begin()));
        }
    }
    return table;
}

// Seeded random categorical table: up to max_attrs attributes with up to
// max_values labels each, cells uniform.
inline pdd::DiscretizedTable random_table(std::uint64_t seed, int min_attrs, int max_attrs,
                                          int min_values, int max_values, std::size_t min_records,
                                          std::size_t max_records) {
    pdd::SplitMix64 rng(seed);
    const int n_attrs =
        min_attrs + static_cast<int>(rng.next_below(max_attrs - min_attrs + 1));
    const std::size_t records =
        min_records + rng.next_below(max_records - min_records + 1);
    pdd::DiscretizedTable table;
    table.records = records;
    for (int a = 0; a < n_attrs; ++a) {
        pdd::DiscAttribute attr;
        attr.name = "A" + std::to_string(a + 1);
        const int values =
            min_values + static_cast<int>(rng.next_below(max_values - min_values + 1));
        for (int v = 0; v < values; ++v) attr.labels.push_back("v" + std::to_string(v + 1));
        table.attributes.push_back(std::move(attr));
        std::vector<std::int32_t> codes(records);
        for (auto& code : codes) code = static_cast<std::int32_t>(rng.next_below(values));
        table.codes.push_back(std::move(codes));
    }
    return table;
}

// Independent adjusted-residual oracle: builds the full R x C contingency
// table of one attribute pair and applies the textbook formula to a cell.
// Shares no code with the engine's AvIndex/occ_pair path.
inline double oracle_adjusted_residual(const pdd::DiscretizedTable& table, std::size_t attr_a,
                                       int code_a, std::size_t attr_b, int code_b) {
    const std::size_t rows = table.attributes[attr_a].labels.size();
    const std::size_t cols = table.attributes[attr_b].labels.size();
    std::vector<std::vector<long>> counts(rows, std::vector<long>(cols, 0));
    for (std::size_t r = 0; r < table.records; ++r)
        ++counts[table.codes[attr_a][r]][table.codes[attr_b][r]];
    std::vector<long> row_sum(rows, 0), col_sum(cols, 0);
    long grand = 0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            row_sum[i] += counts[i][j];
            col_sum[j] += counts[i][j];
            grand += counts[i][j];
        }
    const double n = static_cast<double>(grand);
    const double rs = static_cast<double>(row_sum[code_a]);
    const double cs = static_cast<double>(col_sum[code_b]);
    const double expected = rs * cs / n;
    const double variance = expected * (1.0 - rs / n) * (1.0 - cs / n);
    return (static_cast<double>(counts[code_a][code_b]) - expected) / std::sqrt(variance);
}

// Exhaustive itemset enumeration used as the Apriori oracle: every
// attribute-distinct AV combination up to max_size with its exact count.
inline std::map<std::vector<int>, long> enumerate_itemsets(const pdd::DiscretizedTable& table,
                                                           const pdd::AvIndex& index,
                                                           int max_size) {
    std::map<std::vector<int>, long> counts;
    const std::size_t n_attrs = table.attributes.size();

    // Attribute subsets of size 1..max_size, then every value choice per subset.
    std::vector<std::vector<int>> attr_subsets;
    std::vector<int> current;
    auto recurse_attrs = [&](auto&& self, std::size_t start) -> void {
        if (!current.empty() && static_cast<int>(current.size()) <= max_size)
            attr_subsets.push_back(current);
        if (static_cast<int>(current.size()) == max_size) return;
        for (std::size_t a = start; a < n_attrs; ++a) {
            current.push_back(static_cast<int>(a));
            self(self, a + 1);
            current.pop_back();
        }
    };
    recurse_attrs(recurse_attrs, 0);

    for (const auto& attrs : attr_subsets) {
        std::vector<int> choice(attrs.size(), 0);
        while (true) {
            std::vector<int> avs;
            for (std::size_t i = 0; i < attrs.size(); ++i)
                avs.push_back(index.attribute_span[attrs[i]].first + choice[i]);
            long count = 0;
            for (std::size_t r = 0; r < table.records; ++r) {
                bool all = true;
                for (std::size_t i = 0; i < attrs.size(); ++i)
                    if (table.codes[attrs[i]][r] != choice[i]) {
                        all = false;
                        break;
                    }
                if (all) ++count;
            }
            counts[avs] = count;
            // Next value combination.
            std::size_t pos = 0;
            while (pos < choice.size()) {
                if (++choice[pos] <
                    static_cast<int>(table.attributes[attrs[pos]].labels.size()))
                    break;
                choice[pos] = 0;
                ++pos;
            }
            if (pos == choice.size()) break;
        }
    }
    return counts;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace testutil
