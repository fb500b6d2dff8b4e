#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "pdd/errors.hpp"
#include "pdd/patterns.hpp"

using namespace pdd;
using testutil::make_table;

namespace {

AvIndex distinct_attr_index(std::size_t n) {
    AvIndex index;
    for (std::size_t i = 0; i < n; ++i) {
        index.entries.push_back({"A" + std::to_string(i), "v", static_cast<int>(i)});
        index.attribute_span.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
    }
    return index;
}

DisentangledSpace rank_one_space(int ds_id, double eigenvalue,
                                 const std::vector<double>& loading) {
    DisentangledSpace space;
    space.ds_id = ds_id;
    space.eigenvalue = eigenvalue;
    space.loading = loading;
    const std::size_t n = loading.size();
    space.rarv = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            space.rarv(i, j) = eigenvalue * loading[i] * loading[j];
    return space;
}

}  // namespace

TEST_CASE("form_pattern_groups: sign partition when all pairs significant") {
    // Loadings (+,+,-,-) with eigenvalue large enough that |RAR| > tau on
    // every cross pair; positive pairs land in PG1, negative in PG2.
    const auto space = rank_one_space(1, 40.0, {0.5, 0.5, -0.5, -0.5});
    const auto index = distinct_attr_index(4);
    const auto groups = form_pattern_groups({space}, index, 1.96);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].pg_id == 1);
    CHECK(groups[0].members == std::vector<int>{0, 1});
    CHECK(groups[1].pg_id == 2);
    CHECK(groups[1].members == std::vector<int>{2, 3});
    CHECK(groups[0].name() == "DS1_PG1");
    CHECK(groups[1].name() == "DS1_PG2");
}

TEST_CASE("form_pattern_groups: near-center AV with no significant entry excluded") {
    const auto space = rank_one_space(1, 40.0, {0.70, 0.70, 1e-6, 0.0});
    const auto index = distinct_attr_index(4);
    const auto groups = form_pattern_groups({space}, index, 1.96);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].members == std::vector<int>{0, 1});
}

TEST_CASE("form_pattern_groups: negative eigenvalue pairs opposite polarities") {
    // eigenvalue < 0: significant entries connect opposite-sign loadings, so
    // both polarity groups are populated and subgroups become cross-polarity
    // singletons.
    const auto space = rank_one_space(2, -40.0, {0.7, -0.7, 0.05, 0.0});
    const auto index = distinct_attr_index(4);
    const auto groups = form_pattern_groups({space}, index, 1.96);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].members == std::vector<int>{0});
    CHECK(groups[1].members == std::vector<int>{1});
    const auto subs = form_subgroups(groups[0], space, index, 1.96);
    REQUIRE(subs.size() == 1);
    CHECK(subs[0].cross_polarity);
}

TEST_CASE("form_subgroups: complete graph is one subgroup") {
    const auto space = rank_one_space(1, 40.0, {0.5, 0.5, 0.5, 0.5});
    const auto index = distinct_attr_index(4);
    const auto groups = form_pattern_groups({space}, index, 1.96);
    REQUIRE(groups.size() == 1);
    const auto subs = form_subgroups(groups[0], space, index, 1.96);
    REQUIRE(subs.size() == 1);
    CHECK(subs[0].members == std::vector<int>{0, 1, 2, 3});
    CHECK(subs[0].subpg_id == 1);
    CHECK(!subs[0].cross_polarity);
}

TEST_CASE("form_subgroups: chain connectivity without a closing edge") {
    // Hub loading keeps a-b and b-c significant while a-c stays below tau:
    // RAR(a,b)=RAR(b,c)=2.715 > 1.96, RAR(a,c)=0.9 < 1.96.
    const auto space = rank_one_space(1, 10.0, {0.3, 0.905, 0.3});
    const auto index = distinct_attr_index(3);
    const auto groups = form_pattern_groups({space}, index, 1.96);
    REQUIRE(groups.size() == 1);
    REQUIRE(groups[0].members == std::vector<int>{0, 1, 2});
    const auto subs = form_subgroups(groups[0], space, index, 1.96);
    REQUIRE(subs.size() == 1);
    CHECK(subs[0].members == std::vector<int>{0, 1, 2});

    // Clique mode splits the same chain into its two maximal cliques.
    const auto cliques = form_subgroups(groups[0], space, index, 1.96, SubgroupMode::Cliques);
    REQUIRE(cliques.size() == 2);
    CHECK(cliques[0].members == std::vector<int>{0, 1});
    CHECK(cliques[1].members == std::vector<int>{1, 2});
}

TEST_CASE("form_subgroups: disconnected cliques become separate subgroups") {
    // Hand-built space (the operation reads the matrix, not the loadings):
    // edges only inside {0,1} and inside {2,3}.
    DisentangledSpace space;
    space.ds_id = 1;
    space.eigenvalue = 10.0;
    space.loading = {0.5, 0.5, 0.5, 0.5};
    space.rarv = Matrix(4, 4);
    space.rarv(0, 1) = space.rarv(1, 0) = 3.0;
    space.rarv(2, 3) = space.rarv(3, 2) = 3.0;
    const auto index = distinct_attr_index(4);
    PatternGroup group{1, 1, {0, 1, 2, 3}};
    const auto subs = form_subgroups(group, space, index, 1.96);
    REQUIRE(subs.size() == 2);
    CHECK(subs[0].members == std::vector<int>{0, 1});
    CHECK(subs[1].members == std::vector<int>{2, 3});
}

TEST_CASE("form_subgroups: within-attribute cells never form edges") {
    DisentangledSpace space;
    space.ds_id = 1;
    space.eigenvalue = 10.0;
    space.loading = {0.7, 0.7, 0.1};
    space.rarv = Matrix(3, 3);
    space.rarv(0, 1) = space.rarv(1, 0) = 5.0;  // same attribute below
    AvIndex index;
    index.entries.push_back({"A", "x", 0});
    index.entries.push_back({"A", "y", 0});
    index.entries.push_back({"B", "z", 1});
    index.attribute_span.emplace_back(0, 2);
    index.attribute_span.emplace_back(2, 3);
    PatternGroup group{1, 1, {0, 1}};
    const auto subs = form_subgroups(group, space, index, 1.96);
    // No cross-attribute edge: two singletons, not one pair.
    REQUIRE(subs.size() == 2);
    CHECK(subs[0].members.size() == 1);
    CHECK(subs[1].members.size() == 1);
}

TEST_CASE("classify_ava: definitional gates") {
    // Table engineered so (a1,b1) is strongly positive: AR > tau.
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < 40; ++i) rows.push_back({"a1", "b1"});
    for (int i = 0; i < 10; ++i) rows.push_back({"a1", "b2"});
    for (int i = 0; i < 10; ++i) rows.push_back({"a2", "b1"});
    for (int i = 0; i < 40; ++i) rows.push_back({"a2", "b2"});
    const auto table = make_table({{"A", {"a1", "a2"}}, {"B", {"b1", "b2"}}}, rows);
    const auto [index, model] = build_contingency(table);
    const Matrix arv = build_arv(index, model);
    const auto decomposition = eigendecompose(arv);
    const auto spaces = select_spaces(decomposition, index, 1.96, 5);
    REQUIRE(!spaces.empty());

    const int a1 = index.lookup("A", "a1");
    const int a2 = index.lookup("A", "a2");
    const int b1 = index.lookup("B", "b1");

    const auto frequent = classify_ava(a1, b1, model, spaces, 1.96);
    CHECK(frequent.classification == AvaClass::Frequent);
    CHECK(frequent.ar > 1.96);
    CHECK(frequent.best_rar > 1.96);
    CHECK(frequent.ds_id >= 1);
    CHECK(frequent.support == doctest::Approx(0.4));
    CHECK(frequent.confidence == doctest::Approx(0.8));  // P(b1 | a1)

    // (a2,b1) is anti-associated (AR = -6); a space lifting its RAR above
    // tau turns it into a rare pattern.
    const auto lift = rank_one_space(3, 10.0, {0.0, 0.7, 0.7, 0.0});
    const auto rare = classify_ava(a2, b1, model, {lift}, 1.96);
    CHECK(rare.classification == AvaClass::Rare);
    CHECK(rare.ar < -1.96);
    CHECK(rare.best_rar == doctest::Approx(4.9));
    CHECK(rare.ds_id == 3);
    CHECK(rare.count > 0);

    // Same pair under a weak space: the RAR gate fails despite |AR| > tau.
    const auto weak = rank_one_space(3, 3.0, {0.0, 0.7, 0.7, 0.0});
    CHECK(classify_ava(a2, b1, model, {weak}, 1.96).classification ==
          AvaClass::Insignificant);

    // No retained spaces at all: nothing classifies.
    const auto gated = classify_ava(a1, b1, model, {}, 1.96);
    CHECK(gated.classification == AvaClass::Insignificant);
}

TEST_CASE("classify_ava: frequent and rare are mutually exclusive by construction") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const auto table = testutil::random_table(seed, 2, 4, 2, 4, 30, 200);
        const auto [index, model] = build_contingency(table);
        const auto decomposition = eigendecompose(build_arv(index, model));
        const auto spaces = select_spaces(decomposition, index, 1.96, 5);
        CAPTURE(seed);
        for (std::size_t i = 0; i < index.size(); ++i)
            for (std::size_t j = i + 1; j < index.size(); ++j) {
                if (!index.cross_attribute(static_cast<int>(i), static_cast<int>(j))) continue;
                const auto rec =
                    classify_ava(static_cast<int>(i), static_cast<int>(j), model, spaces, 1.96);
                if (rec.classification == AvaClass::Frequent) {
                    CHECK(rec.ar > 1.96);
                    CHECK(rec.best_rar > 1.96);
                }
                if (rec.classification == AvaClass::Rare) {
                    CHECK(rec.ar < -1.96);
                    CHECK(rec.best_rar > 1.96);
                    CHECK(rec.count > 0);
                }
            }
    }
}

TEST_CASE("coverage: selection, conjunction, contradiction") {
    const auto table = make_table({{"A", {"a1", "a2"}}, {"B", {"b1", "b2"}}},
                                  {{"a1", "b1"}, {"a1", "b1"}, {"a1", "b2"}, {"a2", "b2"}});
    const auto [index, model] = build_contingency(table);
    (void)model;

    CHECK(coverage({{"A", "a1"}}, table, index) == std::vector<int>{0, 1, 2});
    CHECK(coverage({{"A", "a1"}, {"B", "b1"}}, table, index) == std::vector<int>{0, 1});
    // Two values of one attribute never hold together.
    CHECK(coverage({{"A", "a1"}, {"A", "a2"}}, table, index).empty());
    CHECK_THROWS_AS(coverage({{"A", "zzz"}}, table, index), DataError);
    try {
        coverage({{"Nope", "a1"}}, table, index);
        FAIL("expected UnknownAv");
    } catch (const DataError& e) {
        CHECK(e.code() == ErrorCode::UnknownAv);
    }
}

TEST_CASE("coverage: sound and complete on random tables") {
    for (std::uint64_t seed = 40; seed < 50; ++seed) {
        const auto table = testutil::random_table(seed, 2, 4, 2, 4, 20, 120);
        const auto [index, model] = build_contingency(table);
        (void)model;
        SplitMix64 rng(seed * 977);
        const int a = static_cast<int>(rng.next_below(table.attributes.size()));
        int b = static_cast<int>(rng.next_below(table.attributes.size()));
        if (b == a) b = (b + 1) % static_cast<int>(table.attributes.size());
        const int va = static_cast<int>(rng.next_below(table.attributes[a].labels.size()));
        const int vb = static_cast<int>(rng.next_below(table.attributes[b].labels.size()));
        const int av_a = index.attribute_span[a].first + va;
        const int av_b = index.attribute_span[b].first + vb;
        const auto covered = coverage(std::vector<int>{av_a, av_b}, table, index);
        std::set<int> covered_set(covered.begin(), covered.end());
        for (std::size_t r = 0; r < table.records; ++r) {
            const bool holds = table.codes[a][r] == va && table.codes[b][r] == vb;
            CHECK(holds == (covered_set.count(static_cast<int>(r)) > 0));
        }
    }
}
