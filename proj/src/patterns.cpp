#include "pdd/patterns.hpp"

#include <algorithm>

#include "pdd/errors.hpp"

namespace pdd {

const char* ava_class_name(AvaClass cls) {
    switch (cls) {
        case AvaClass::Frequent: return "frequent";
        case AvaClass::Rare: return "rare";
        case AvaClass::Insignificant: return "insignificant";
    }
    return "?";
}

namespace {

bool has_significant_entry(const DisentangledSpace& space, const AvIndex& index, int av,
                           double tau) {
    const std::size_t n = index.size();
    for (std::size_t j = 0; j < n; ++j)
        if (index.cross_attribute(av, static_cast<int>(j)) &&
            space.rarv(static_cast<std::size_t>(av), j) > tau)
            return true;
    return false;
}

bool significant_edge(const DisentangledSpace& space, const AvIndex& index, int a, int b,
                      double tau) {
    return index.cross_attribute(a, b) &&
           space.rarv(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) > tau;
}

// Bron-Kerbosch without pivoting; group graphs are tiny and the fixed
// vertex order keeps output deterministic.
void maximal_cliques(const std::vector<int>& vertices,
                     const std::vector<std::vector<bool>>& adj, std::vector<int>& r,
                     std::vector<int> p, std::vector<int> x,
                     std::vector<std::vector<int>>& out) {
    if (p.empty() && x.empty()) {
        out.push_back(r);
        return;
    }
    while (!p.empty()) {
        const int v = p.front();
        std::vector<int> pv, xv;
        for (int u : p)
            if (adj[v][u]) pv.push_back(u);
        for (int u : x)
            if (adj[v][u]) xv.push_back(u);
        r.push_back(v);
        maximal_cliques(vertices, adj, r, std::move(pv), std::move(xv), out);
        r.pop_back();
        p.erase(p.begin());
        x.push_back(v);
    }
}

}  // namespace

std::vector<PatternGroup> form_pattern_groups(const std::vector<DisentangledSpace>& spaces,
                                              const AvIndex& index, double tau) {
    std::vector<PatternGroup> groups;
    for (const auto& space : spaces) {
        PatternGroup positive{space.ds_id, 1, {}};
        PatternGroup negative{space.ds_id, 2, {}};
        for (std::size_t av = 0; av < index.size(); ++av) {
            const double loading = space.loading[av];
            if (loading == 0.0) continue;  // exactly at the center
            if (!has_significant_entry(space, index, static_cast<int>(av), tau)) continue;
            (loading > 0.0 ? positive : negative).members.push_back(static_cast<int>(av));
        }
        if (!positive.members.empty()) groups.push_back(std::move(positive));
        if (!negative.members.empty()) groups.push_back(std::move(negative));
    }
    return groups;
}

std::vector<SubPatternGroup> form_subgroups(const PatternGroup& group,
                                            const DisentangledSpace& space, const AvIndex& index,
                                            double tau, SubgroupMode mode) {
    const std::vector<int>& members = group.members;
    const std::size_t n = members.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (significant_edge(space, index, members[i], members[j], tau)) {
                adj[i][j] = true;
                adj[j][i] = true;
            }

    std::vector<std::vector<int>> member_sets;
    if (mode == SubgroupMode::Components) {
        std::vector<int> component(n, -1);
        int n_components = 0;
        for (std::size_t s = 0; s < n; ++s) {
            if (component[s] >= 0) continue;
            std::vector<std::size_t> stack{s};
            component[s] = n_components;
            while (!stack.empty()) {
                const std::size_t v = stack.back();
                stack.pop_back();
                for (std::size_t u = 0; u < n; ++u)
                    if (adj[v][u] && component[u] < 0) {
                        component[u] = n_components;
                        stack.push_back(u);
                    }
            }
            ++n_components;
        }
        member_sets.resize(n_components);
        for (std::size_t i = 0; i < n; ++i) member_sets[component[i]].push_back(members[i]);
    } else {
        std::vector<int> local(n);
        for (std::size_t i = 0; i < n; ++i) local[i] = static_cast<int>(i);
        std::vector<int> r;
        std::vector<std::vector<int>> cliques;
        maximal_cliques(local, adj, r, local, {}, cliques);
        for (auto& clique : cliques) {
            std::vector<int> set;
            for (int v : clique) set.push_back(members[v]);
            std::sort(set.begin(), set.end());
            member_sets.push_back(std::move(set));
        }
        std::sort(member_sets.begin(), member_sets.end());
    }

    std::vector<SubPatternGroup> out;
    for (auto& set : member_sets) {
        SubPatternGroup sub;
        sub.members = std::move(set);
        std::sort(sub.members.begin(), sub.members.end());
        // A lone AV stays only because its significant partners have the
        // opposite polarity; membership already guarantees it has some.
        sub.cross_polarity = sub.members.size() == 1;
        out.push_back(std::move(sub));
    }
    std::sort(out.begin(), out.end(), [](const SubPatternGroup& a, const SubPatternGroup& b) {
        return a.members < b.members;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].subpg_id = static_cast<int>(i + 1);
    return out;
}

AvaRecord classify_ava(int av1, int av2, const ContingencyModel& model,
                       const std::vector<DisentangledSpace>& spaces, double tau,
                       ArFormula formula) {
    if (!(av1 >= 0 && av2 >= 0 && static_cast<std::size_t>(av1) < model.dim &&
          static_cast<std::size_t>(av2) < model.dim))
        throw DataError(ErrorCode::UnknownAv, "attribute value index out of range");

    AvaRecord rec;
    rec.av1 = av1;
    rec.av2 = av2;
    rec.count = model.pair(av1, av2);
    rec.support = support(model, av1, av2);
    rec.confidence = model.occ[av1] == 0
                         ? 0.0
                         : static_cast<double>(rec.count) / static_cast<double>(model.occ[av1]);
    const ArValue ar = adjusted_residual(model, av1, av2, formula);
    rec.ar = ar.value;
    rec.ar_degenerate = ar.degenerate;

    bool has_rar = false;
    for (const auto& space : spaces) {
        const double rar =
            space.rarv(static_cast<std::size_t>(av1), static_cast<std::size_t>(av2));
        if (!has_rar || rar > rec.best_rar) {
            rec.best_rar = rar;
            rec.ds_id = space.ds_id;
            has_rar = true;
        }
    }
    if (!has_rar) {
        rec.best_rar = 0.0;
        rec.ds_id = 0;
    }

    if (!ar.degenerate && has_rar && rec.best_rar > tau) {
        if (rec.ar > tau)
            rec.classification = AvaClass::Frequent;
        else if (rec.ar < -tau && rec.count > 0)
            rec.classification = AvaClass::Rare;
    }
    return rec;
}

std::vector<int> coverage(const std::vector<int>& pattern, const DiscretizedTable& table,
                          const AvIndex& index) {
    for (int av : pattern)
        if (av < 0 || static_cast<std::size_t>(av) >= index.size())
            throw DataError(ErrorCode::UnknownAv,
                            "attribute value index " + std::to_string(av) + " out of range");

    // (attribute, code) tests per pattern element.
    std::vector<std::pair<int, std::int32_t>> tests;
    for (int av : pattern) {
        const int attr = index.attribute_of(av);
        const std::int32_t code =
            static_cast<std::int32_t>(av - index.attribute_span[attr].first);
        tests.emplace_back(attr, code);
    }
    std::vector<int> records;
    for (std::size_t r = 0; r < table.records; ++r) {
        bool all = true;
        for (const auto& [attr, code] : tests)
            if (table.codes[attr][r] != code) {
                all = false;
                break;
            }
        if (all) records.push_back(static_cast<int>(r));
    }
    return records;
}

std::vector<int> coverage(const std::vector<std::pair<std::string, std::string>>& pattern,
                          const DiscretizedTable& table, const AvIndex& index) {
    std::vector<int> avs;
    for (const auto& [attribute, value] : pattern) {
        const int av = index.lookup(attribute, value);
        if (av < 0)
            throw DataError(ErrorCode::UnknownAv, "unknown attribute value " + attribute + "=" + value);
        avs.push_back(av);
    }
    return coverage(avs, table, index);
}

}  // namespace pdd
