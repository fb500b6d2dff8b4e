#include "pdd/miner.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pdd/errors.hpp"

namespace pdd {

namespace {

// Count how many records contain every AV of each candidate.
void count_candidates(const DiscretizedTable& table, const AvIndex& index,
                      std::vector<Itemset>& candidates) {
    for (auto& cand : candidates) cand.count = 0;
    for (std::size_t r = 0; r < table.records; ++r) {
        for (auto& cand : candidates) {
            bool all = true;
            for (int av : cand.avs) {
                const int attr = index.attribute_of(av);
                const std::int32_t code =
                    static_cast<std::int32_t>(av - index.attribute_span[attr].first);
                if (table.codes[attr][r] != code) {
                    all = false;
                    break;
                }
            }
            if (all) ++cand.count;
        }
    }
    for (auto& cand : candidates)
        cand.support = static_cast<double>(cand.count) / static_cast<double>(table.records);
}

// Join step: two sorted k-sets sharing a (k-1)-prefix produce a (k+1)-set;
// candidates keeping two AVs of one attribute are discarded.
std::vector<Itemset> generate_candidates(const std::vector<Itemset>& level,
                                         const AvIndex& index) {
    std::set<std::vector<int>> level_keys;
    for (const auto& item : level) level_keys.insert(item.avs);

    std::vector<Itemset> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
        for (std::size_t j = i + 1; j < level.size(); ++j) {
            const auto& a = level[i].avs;
            const auto& b = level[j].avs;
            if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1)) continue;
            std::vector<int> joined = a;
            joined.push_back(b.back());
            std::sort(joined.begin(), joined.end());

            std::set<int> attrs;
            bool ok = true;
            for (int av : joined)
                if (!attrs.insert(index.attribute_of(av)).second) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            // Downward closure: every (k)-subset must be in the level.
            for (std::size_t drop = 0; drop < joined.size() && ok; ++drop) {
                std::vector<int> sub;
                for (std::size_t m = 0; m < joined.size(); ++m)
                    if (m != drop) sub.push_back(joined[m]);
                if (!level_keys.count(sub)) ok = false;
            }
            if (ok) next.push_back({joined, 0, 0.0});
        }
    }
    std::sort(next.begin(), next.end(),
              [](const Itemset& a, const Itemset& b) { return a.avs < b.avs; });
    next.erase(std::unique(next.begin(), next.end(),
                           [](const Itemset& a, const Itemset& b) { return a.avs == b.avs; }),
               next.end());
    return next;
}

std::vector<Itemset> singletons(const AvIndex& index, const ContingencyModel& model) {
    std::vector<Itemset> out;
    for (std::size_t av = 0; av < index.size(); ++av) {
        Itemset item;
        item.avs = {static_cast<int>(av)};
        item.count = model.occ[av];
        item.support = static_cast<double>(item.count) / static_cast<double>(model.records);
        out.push_back(std::move(item));
    }
    return out;
}

}  // namespace

AprioriResult apriori(const DiscretizedTable& table, double minsup, double minconf,
                      int max_size) {
    if (table.records == 0) throw DataError(ErrorCode::EmptyDataset, "apriori over zero records");
    if (minsup <= 0.0 || minsup > 1.0)
        throw DataError(ErrorCode::InvalidValue, "minsup must lie in (0,1]");
    if (max_size < 1) throw DataError(ErrorCode::InvalidValue, "max_size must be >= 1");

    auto [index, model] = build_contingency(table);

    AprioriResult result;
    result.fingerprint = table.fingerprint();

    std::map<std::vector<int>, double> support_of;
    std::vector<Itemset> level;
    for (auto& item : singletons(index, model))
        if (item.support >= minsup) level.push_back(std::move(item));

    for (int size = 1; !level.empty(); ++size) {
        for (const auto& item : level) {
            support_of[item.avs] = item.support;
            result.itemsets.push_back(item);
        }
        if (size >= max_size) break;
        auto candidates = generate_candidates(level, index);
        count_candidates(table, index, candidates);
        level.clear();
        for (auto& cand : candidates)
            if (cand.support >= minsup) level.push_back(std::move(cand));
    }

    // Rules with a single consequent from every itemset of size >= 2.
    for (const auto& item : result.itemsets) {
        if (item.avs.size() < 2) continue;
        for (std::size_t drop = 0; drop < item.avs.size(); ++drop) {
            RuleRecord rule;
            rule.consequent = item.avs[drop];
            for (std::size_t m = 0; m < item.avs.size(); ++m)
                if (m != drop) rule.antecedent.push_back(item.avs[m]);
            rule.support = item.support;
            rule.confidence = item.support / support_of.at(rule.antecedent);
            if (rule.confidence >= minconf) result.rules.push_back(std::move(rule));
        }
    }
    return result;
}

std::vector<Itemset> apriori_inverse(const DiscretizedTable& table, double maxsup,
                                     std::int64_t min_count, int max_size) {
    if (table.records == 0)
        throw DataError(ErrorCode::EmptyDataset, "apriori-inverse over zero records");
    if (!(maxsup > 0.0 && maxsup < 1.0))
        throw DataError(ErrorCode::InvalidValue, "maxsup must lie in (0,1)");
    if (min_count < 1) throw DataError(ErrorCode::InvalidValue, "min_count must be >= 1");

    auto [index, model] = build_contingency(table);

    // An itemset is perfectly rare only if every item already is: subset
    // support dominates superset support, so the binding constraint is the
    // singleton one.
    std::vector<Itemset> out;
    std::vector<Itemset> level;
    for (auto& item : singletons(index, model))
        if (item.support <= maxsup) level.push_back(std::move(item));

    for (int size = 1; !level.empty(); ++size) {
        for (const auto& item : level)
            if (item.count >= min_count) out.push_back(item);
        if (max_size > 0 && size >= max_size) break;
        // Extend every surviving set; count floor prunes (anti-monotone).
        std::vector<Itemset> carry;
        for (auto& item : level)
            if (item.count >= min_count) carry.push_back(std::move(item));
        auto candidates = generate_candidates(carry, index);
        count_candidates(table, index, candidates);
        level.clear();
        for (auto& cand : candidates) level.push_back(std::move(cand));
    }
    std::sort(out.begin(), out.end(), [](const Itemset& a, const Itemset& b) {
        if (a.avs.size() != b.avs.size()) return a.avs.size() < b.avs.size();
        return a.avs < b.avs;
    });
    return out;
}

ComparisonReport compare_criteria(const KnowledgeBase& kb, const AprioriResult& apriori_result,
                                  const std::string& target_attribute, int top_n) {
    if (apriori_result.fingerprint != kb.fingerprint)
        throw DataError(ErrorCode::InconsistentInputs,
                        "apriori output and knowledge base come from different tables");
    if (kb.target_attribute != target_attribute)
        throw DataError(ErrorCode::InconsistentInputs,
                        "knowledge base was analyzed for target '" + kb.target_attribute + "'");

    ComparisonReport report;
    report.target_attribute = target_attribute;
    report.top_n = top_n;

    // Minority class: the lowest-occurrence target value.
    std::int64_t best = -1;
    for (const auto& tv : kb.targets)
        if (best < 0 || tv.occ < best) {
            best = tv.occ;
            report.minority_value = tv.value;
        }

    if (kb.targets.empty()) return report;
    const int target_attr_id = kb.av_index.attribute_of(kb.targets.front().target_av);
    auto is_target_av = [&](int av) { return kb.av_index.attribute_of(av) == target_attr_id; };
    auto classify = [&](int partner, int target_av) {
        return classify_ava(partner, target_av, kb.contingency, kb.spaces, kb.config.tau,
                            kb.config.formula);
    };

    // Baseline side: pairs the Apriori miner surfaced. Support list from its
    // size-2 itemsets, confidence list from its partner -> target rules.
    std::vector<AvaRecord> by_support;
    for (const auto& item : apriori_result.itemsets) {
        if (item.avs.size() != 2) continue;
        const bool t0 = is_target_av(item.avs[0]);
        const bool t1 = is_target_av(item.avs[1]);
        if (t0 == t1) continue;
        const int target_av = t0 ? item.avs[0] : item.avs[1];
        const int partner = t0 ? item.avs[1] : item.avs[0];
        AvaRecord rec = classify(partner, target_av);
        if (std::abs(rec.support - item.support) > 1e-9)
            throw DataError(ErrorCode::InconsistentInputs,
                            "apriori support disagrees with stored counts");
        by_support.push_back(std::move(rec));
    }
    std::vector<AvaRecord> by_confidence;
    for (const auto& rule : apriori_result.rules) {
        if (rule.antecedent.size() != 1 || !is_target_av(rule.consequent) ||
            is_target_av(rule.antecedent[0]))
            continue;
        by_confidence.push_back(classify(rule.antecedent[0], rule.consequent));
    }

    // PDD side: every target-linked pair ranked by AR and by best RAR.
    std::vector<AvaRecord> all_pairs;
    for (const auto& tv : kb.targets)
        for (std::size_t av = 0; av < kb.av_index.size(); ++av)
            if (kb.av_index.cross_attribute(static_cast<int>(av), tv.target_av))
                all_pairs.push_back(classify(static_cast<int>(av), tv.target_av));

    struct Criterion {
        const char* name;
        std::vector<AvaRecord> pool;
        double (*key)(const AvaRecord&);
    };
    std::vector<Criterion> criteria;
    criteria.push_back({"support", std::move(by_support),
                        [](const AvaRecord& r) { return r.support; }});
    criteria.push_back({"confidence", std::move(by_confidence),
                        [](const AvaRecord& r) { return r.confidence; }});
    criteria.push_back({"ar", all_pairs, [](const AvaRecord& r) { return r.ar; }});
    criteria.push_back(
        {"rar", std::move(all_pairs), [](const AvaRecord& r) { return r.best_rar; }});

    auto rank = [&](const Criterion& criterion, std::vector<AvaRecord> pool) {
        CriterionRanking ranking;
        ranking.criterion = criterion.name;
        std::stable_sort(pool.begin(), pool.end(),
                         [&](const AvaRecord& a, const AvaRecord& b) {
                             const double ka = criterion.key(a);
                             const double kb_ = criterion.key(b);
                             if (ka != kb_) return ka > kb_;
                             if (a.av2 != b.av2) return a.av2 < b.av2;
                             return a.av1 < b.av1;
                         });
        if (top_n >= 0 && pool.size() > static_cast<std::size_t>(top_n))
            pool.resize(static_cast<std::size_t>(top_n));
        for (const auto& rec : pool)
            if (kb.av_index.entries[rec.av2].value == report.minority_value)
                ++ranking.minority_hits;
        ranking.top = std::move(pool);
        return ranking;
    };

    for (const auto& tv : kb.targets) {
        ComparisonReport::ValueRankings value_rankings;
        value_rankings.value = tv.value;
        for (const auto& criterion : criteria) {
            std::vector<AvaRecord> pool;
            for (const auto& rec : criterion.pool)
                if (rec.av2 == tv.target_av) pool.push_back(rec);
            value_rankings.rankings.push_back(rank(criterion, std::move(pool)));
        }
        report.per_value.push_back(std::move(value_rankings));
    }
    for (auto& criterion : criteria)
        report.rankings.push_back(rank(criterion, std::move(criterion.pool)));

    const std::size_t n = report.rankings.size();
    report.overlap.assign(n, std::vector<int>(n, 0));
    auto key_of = [](const AvaRecord& r) { return std::make_pair(r.av1, r.av2); };
    for (std::size_t i = 0; i < n; ++i) {
        std::set<std::pair<int, int>> keys;
        for (const auto& rec : report.rankings[i].top) keys.insert(key_of(rec));
        for (std::size_t j = 0; j < n; ++j) {
            int shared = 0;
            for (const auto& rec : report.rankings[j].top)
                if (keys.count(key_of(rec))) ++shared;
            report.overlap[i][j] = shared;
        }
    }
    return report;
}

}  // namespace pdd
