#include "pdd/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pdd/errors.hpp"

namespace pdd {

int DiscretizedTable::attribute_index(const std::string& name) const {
    for (std::size_t a = 0; a < attributes.size(); ++a)
        if (attributes[a].name == name) return static_cast<int>(a);
    return -1;
}

std::uint64_t DiscretizedTable::fingerprint() const {
    // FNV-1a over the logical content: attribute names, label sets, codes.
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto mix_byte = [&h](unsigned char b) {
        h ^= b;
        h *= 0x100000001B3ULL;
    };
    auto mix_string = [&](const std::string& s) {
        for (char c : s) mix_byte(static_cast<unsigned char>(c));
        mix_byte(0xFF);
    };
    auto mix_u64 = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) mix_byte(static_cast<unsigned char>(v >> (8 * i)));
    };
    mix_u64(records);
    mix_u64(attributes.size());
    for (std::size_t a = 0; a < attributes.size(); ++a) {
        mix_string(attributes[a].name);
        for (const auto& label : attributes[a].labels) mix_string(label);
        for (std::int32_t code : codes[a]) mix_u64(static_cast<std::uint64_t>(code));
    }
    return h;
}

std::vector<double> equal_frequency_cutpoints(std::vector<double> values, int k) {
    if (values.empty())
        throw DataError(ErrorCode::EmptyDataset, "equal-frequency binning over no values");
    if (k < 2) throw DataError(ErrorCode::ParseFailure, "equal-frequency binning requires k >= 2");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();

    // Candidate split positions: prefix counts at which adjacent sorted
    // values differ. Splitting only there keeps ties in one bin.
    std::vector<std::size_t> boundaries;
    for (std::size_t i = 1; i < n; ++i)
        if (values[i - 1] < values[i]) boundaries.push_back(i);

    const std::size_t distinct = boundaries.size() + 1;
    if (distinct < static_cast<std::size_t>(k))
        throw DataError(ErrorCode::TooFewDistinct,
                        std::to_string(distinct) + " distinct values cannot fill " +
                            std::to_string(k) + " bins");

    std::vector<double> cuts;
    cuts.reserve(k - 1);
    std::size_t prev = 0;  // index into `boundaries` of the next usable split
    for (int i = 1; i < k; ++i) {
        const double target = static_cast<double>(n) * i / k;
        // Leave enough boundaries for the splits still to come.
        const std::size_t last = boundaries.size() - static_cast<std::size_t>(k - 1 - i);
        std::size_t best = prev;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = prev; j < last; ++j) {
            const double dist = std::abs(static_cast<double>(boundaries[j]) - target);
            if (dist < best_dist) {  // ties keep the earlier boundary: smaller left bin
                best_dist = dist;
                best = j;
            }
        }
        const std::size_t pos = boundaries[best];
        cuts.push_back((values[pos - 1] + values[pos]) / 2.0);
        prev = best + 1;
    }
    return cuts;
}

std::size_t bin_of(double v, const std::vector<double>& cutpoints) {
    return static_cast<std::size_t>(
        std::lower_bound(cutpoints.begin(), cutpoints.end(), v) - cutpoints.begin());
}

std::vector<std::string> apply_level_map(const std::vector<std::string>& values,
                                         const BinSpec& spec) {
    std::vector<std::string> out;
    out.reserve(values.size());
    for (const auto& v : values) {
        auto it = spec.level_map.find(v);
        if (it == spec.level_map.end())
            throw DataError(ErrorCode::UnmappedLevel, "no mapping for source value '" + v + "'");
        out.push_back(it->second);
    }
    return out;
}

std::string interval_label(double lo, double hi) {
    auto fmt = [](double v) {
        std::ostringstream os;
        if (v == std::floor(v) && std::abs(v) < 1e15)
            os << static_cast<long long>(v);
        else
            os << v;
        return os.str();
    };
    return "[" + fmt(lo) + "," + fmt(hi) + "]";
}

namespace {

// Ordinal labels convert to their declared rank for numeric binning modes.
std::vector<double> numeric_view(const DatasetTable& table, std::size_t a) {
    const AttributeSchema& attr = table.schema.attributes[a];
    const auto& column = table.columns[a];
    std::vector<double> values;
    values.reserve(column.size());
    if (attr.kind == Kind::Numerical) {
        for (std::size_t r = 0; r < column.size(); ++r)
            values.push_back(parse_numeric_cell(column[r], attr.name, r + 1));
    } else {
        for (const auto& cell : column) {
            auto it = std::find(attr.allowed_values.begin(), attr.allowed_values.end(), cell);
            if (it == attr.allowed_values.end())
                throw DataError(ErrorCode::InvalidValue,
                                "attribute '" + attr.name + "': value '" + cell +
                                    "' not in declared order");
            values.push_back(static_cast<double>(it - attr.allowed_values.begin()));
        }
    }
    return values;
}

void bin_numeric_attribute(const AttributeSchema& attr, const std::vector<double>& values,
                           const BinSpec& spec, DiscAttribute& out,
                           std::vector<std::int32_t>& codes, AttributeProvenance& prov) {
    std::vector<double> cuts;
    if (spec.mode == BinSpec::Mode::EqualFrequency) {
        cuts = equal_frequency_cutpoints(values, spec.k);
    } else {
        cuts = spec.cutpoints;
    }
    const std::size_t bins = cuts.size() + 1;

    std::vector<BinRealization> realized(bins);
    codes.resize(values.size());
    for (std::size_t r = 0; r < values.size(); ++r) {
        const std::size_t b = bin_of(values[r], cuts);
        codes[r] = static_cast<std::int32_t>(b);
        BinRealization& bin = realized[b];
        if (bin.empty) {
            bin.lo = bin.hi = values[r];
            bin.empty = false;
        } else {
            bin.lo = std::min(bin.lo, values[r]);
            bin.hi = std::max(bin.hi, values[r]);
        }
        ++bin.count;
    }
    for (std::size_t b = 0; b < bins; ++b) {
        realized[b].label = spec.labels.empty()
                                ? (realized[b].empty ? "bin" + std::to_string(b + 1)
                                                     : interval_label(realized[b].lo, realized[b].hi))
                                : spec.labels[b];
        out.labels.push_back(realized[b].label);
    }
    prov.mode = spec.mode;
    prov.cutpoints = cuts;
    prov.bins = std::move(realized);
    (void)attr;
}

}  // namespace

DiscretizedTable discretize_table(const DatasetTable& table) {
    DiscretizedTable out;
    out.records = table.record_count();
    out.dropped = table.dropped;
    out.attributes.resize(table.attribute_count());
    out.codes.resize(table.attribute_count());

    for (std::size_t a = 0; a < table.attribute_count(); ++a) {
        const AttributeSchema& attr = table.schema.attributes[a];
        DiscAttribute& disc = out.attributes[a];
        disc.name = attr.name;
        disc.role = attr.role;

        const bool needs_binning = attr.kind == Kind::Ordinal || attr.kind == Kind::Numerical;
        try {
            if (!needs_binning) {
                // Categorical/boolean pass through: declared order, then first
                // appearance for undeclared labels.
                disc.labels = attr.allowed_values;
                std::map<std::string, std::int32_t> code_of;
                for (std::size_t i = 0; i < disc.labels.size(); ++i)
                    code_of[disc.labels[i]] = static_cast<std::int32_t>(i);
                auto& codes = out.codes[a];
                codes.reserve(out.records);
                for (const auto& cell : table.columns[a]) {
                    auto it = code_of.find(cell);
                    if (it == code_of.end()) {
                        it = code_of.emplace(cell, static_cast<std::int32_t>(disc.labels.size())).first;
                        disc.labels.push_back(cell);
                    }
                    codes.push_back(it->second);
                }
                continue;
            }

            if (!attr.discretization)
                throw DataError(ErrorCode::MissingBinSpec,
                                "attribute '" + attr.name + "' has no discretization");

            const BinSpec& spec = *attr.discretization;
            AttributeProvenance prov;
            prov.attribute = attr.name;

            if (spec.mode == BinSpec::Mode::LevelMap) {
                auto relabeled = apply_level_map(table.columns[a], spec);
                disc.labels = level_map_target_labels(spec, attr.allowed_values);
                std::map<std::string, std::int32_t> code_of;
                for (std::size_t i = 0; i < disc.labels.size(); ++i)
                    code_of[disc.labels[i]] = static_cast<std::int32_t>(i);
                auto& codes = out.codes[a];
                codes.reserve(out.records);
                for (const auto& label : relabeled) codes.push_back(code_of.at(label));
                prov.mode = spec.mode;
                prov.level_map = spec.level_map;
            } else {
                auto values = numeric_view(table, a);
                bin_numeric_attribute(attr, values, spec, disc, out.codes[a], prov);
            }
            out.provenance.push_back(std::move(prov));
        } catch (const DataError& e) {
            if (e.code() == ErrorCode::UnmappedLevel || e.code() == ErrorCode::TooFewDistinct ||
                e.code() == ErrorCode::EmptyDataset) {
                std::string msg = e.what();
                const std::string prefix = std::string(error_code_name(e.code())) + ": ";
                if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
                throw DataError(e.code(), "attribute '" + attr.name + "': " + msg);
            }
            throw;
        }
    }
    return out;
}

DiscretizedTable categorical_view(const DatasetTable& table) {
    for (const auto& attr : table.schema.attributes)
        if (attr.kind == Kind::Ordinal || attr.kind == Kind::Numerical)
            throw DataError(ErrorCode::MissingBinSpec,
                            "attribute '" + attr.name + "' is not categorical");
    return discretize_table(table);
}

}  // namespace pdd
