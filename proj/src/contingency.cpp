#include "pdd/contingency.hpp"

#include <cmath>

#include "pdd/errors.hpp"

namespace pdd {

int AvIndex::lookup(const std::string& attribute, const std::string& value) const {
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i].attribute == attribute && entries[i].value == value)
            return static_cast<int>(i);
    return -1;
}

std::pair<AvIndex, ContingencyModel> build_contingency(const DiscretizedTable& table) {
    AvIndex index;
    for (std::size_t a = 0; a < table.attributes.size(); ++a) {
        const int first = static_cast<int>(index.entries.size());
        for (const auto& label : table.attributes[a].labels)
            index.entries.push_back({table.attributes[a].name, label, static_cast<int>(a)});
        index.attribute_span.emplace_back(first, static_cast<int>(index.entries.size()));
    }

    const std::size_t t = index.size();
    ContingencyModel model;
    model.records = table.records;
    model.dim = t;
    model.occ.assign(t, 0);
    model.occ_pair.assign(t * t, 0);

    const std::size_t n_attrs = table.attributes.size();
    std::vector<int> av_of_record(n_attrs);
    for (std::size_t r = 0; r < table.records; ++r) {
        for (std::size_t a = 0; a < n_attrs; ++a) {
            const int av = index.attribute_span[a].first + table.codes[a][r];
            av_of_record[a] = av;
            ++model.occ[av];
        }
        for (std::size_t a = 0; a < n_attrs; ++a)
            for (std::size_t b = a + 1; b < n_attrs; ++b)
                ++model.pair_ref(av_of_record[a], av_of_record[b]);
    }
    // Mirror the upper-triangular counts.
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) {
            const std::int64_t sum = model.pair(static_cast<int>(i), static_cast<int>(j)) +
                                     model.pair(static_cast<int>(j), static_cast<int>(i));
            model.pair_ref(static_cast<int>(i), static_cast<int>(j)) = sum;
            model.pair_ref(static_cast<int>(j), static_cast<int>(i)) = sum;
        }
    return {std::move(index), std::move(model)};
}

double support(const ContingencyModel& model, int av1, int av2) {
    if (model.records == 0) throw DataError(ErrorCode::EmptyDataset, "support over zero records");
    return static_cast<double>(model.pair(av1, av2)) / static_cast<double>(model.records);
}

double confidence(const ContingencyModel& model, int av1, int av2) {
    if (model.occ[av2] == 0)
        throw DataError(ErrorCode::ZeroSupportCondition, "conditioning value never occurs");
    return static_cast<double>(model.pair(av1, av2)) / static_cast<double>(model.occ[av2]);
}

double expected(const ContingencyModel& model, int av1, int av2) {
    if (model.records == 0) throw DataError(ErrorCode::EmptyDataset, "expectation over zero records");
    return static_cast<double>(model.occ[av1]) * static_cast<double>(model.occ[av2]) /
           static_cast<double>(model.records);
}

ArValue adjusted_residual(const ContingencyModel& model, int av1, int av2, ArFormula formula) {
    if (model.records == 0)
        throw DataError(ErrorCode::EmptyDataset, "adjusted residual over zero records");
    const double m = static_cast<double>(model.records);
    const std::int64_t o1 = model.occ[av1];
    const std::int64_t o2 = model.occ[av2];
    if (o1 == 0 || o2 == 0 || o1 == static_cast<std::int64_t>(model.records) ||
        o2 == static_cast<std::int64_t>(model.records))
        return {0.0, true};

    const double observed = static_cast<double>(model.pair(av1, av2));
    const double exp = expected(model, av1, av2);
    const double p1 = static_cast<double>(o1) / m;
    const double p2 = static_cast<double>(o2) / m;
    if (formula == ArFormula::Standard)
        return {(observed - exp) / std::sqrt(exp * (1.0 - p1) * (1.0 - p2)), false};
    return {(observed - exp) / std::sqrt(exp) * (1.0 - p1 * p2), false};
}

Matrix build_arv(const AvIndex& index, const ContingencyModel& model, ArFormula formula) {
    const std::size_t t = index.size();
    Matrix arv(t, t, 0.0);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) {
            if (!index.cross_attribute(static_cast<int>(i), static_cast<int>(j))) continue;
            const double ar =
                adjusted_residual(model, static_cast<int>(i), static_cast<int>(j), formula).value;
            arv(i, j) = ar;
            arv(j, i) = ar;
        }
    return arv;
}

}  // namespace pdd
