#include "pdd/kb.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "pdd/errors.hpp"

namespace pdd {

std::size_t KnowledgeBase::frequent_count() const {
    std::size_t n = 0;
    for (const auto& t : targets) n += t.frequent.size();
    return n;
}

std::size_t KnowledgeBase::rare_count() const {
    std::size_t n = 0;
    for (const auto& t : targets) n += t.rare.size();
    return n;
}

namespace {

// av -> (pg_id, subpg_id) lookup for one space's groups.
struct GroupLookup {
    std::map<int, std::pair<int, int>> position;
};

std::map<int, GroupLookup> build_group_lookup(const std::vector<GroupRecord>& groups) {
    std::map<int, GroupLookup> by_ds;
    for (const auto& rec : groups) {
        GroupLookup& lookup = by_ds[rec.group.ds_id];
        for (const auto& sub : rec.subgroups)
            for (int av : sub.members)
                lookup.position.emplace(av, std::make_pair(rec.group.pg_id, sub.subpg_id));
    }
    return by_ds;
}

}  // namespace

std::vector<TargetValuePatterns> extract_target_patterns(
    const DiscretizedTable& table, const AvIndex& index, const ContingencyModel& model,
    const std::vector<DisentangledSpace>& spaces, const std::vector<GroupRecord>& groups,
    const std::string& target_attribute, const AnalysisConfig& config) {
    const int target_attr = table.attribute_index(target_attribute);
    if (target_attr < 0)
        throw DataError(ErrorCode::UnknownTarget,
                        "target attribute '" + target_attribute + "' not in schema");

    const auto lookup = build_group_lookup(groups);
    const auto [first_av, last_av] = index.attribute_span[target_attr];

    std::vector<TargetValuePatterns> out;
    for (int target_av = first_av; target_av < last_av; ++target_av) {
        TargetValuePatterns tv;
        tv.target_av = target_av;
        tv.value = index.entries[target_av].value;
        tv.occ = model.occ[target_av];
        tv.degenerate = tv.occ == 0;

        for (std::size_t av = 0; av < index.size(); ++av) {
            if (!index.cross_attribute(static_cast<int>(av), target_av)) continue;
            AvaRecord rec =
                classify_ava(static_cast<int>(av), target_av, model, spaces, config.tau,
                             config.formula);
            if (rec.classification == AvaClass::Insignificant) continue;

            // The association is reported inside the cluster holding the
            // partner AV in the space where its best RAR was attained.
            auto ds_it = lookup.find(rec.ds_id);
            if (ds_it == lookup.end())
                throw InternalError("classified pair references a space without groups");
            auto pos_it = ds_it->second.position.find(rec.av1);
            if (pos_it == ds_it->second.position.end())
                throw InternalError("classified partner AV missing from its pattern group");
            rec.pg_id = pos_it->second.first;
            rec.subpg_id = pos_it->second.second;

            (rec.classification == AvaClass::Frequent ? tv.frequent : tv.rare)
                .push_back(std::move(rec));
        }
        auto by_ar_magnitude = [](const AvaRecord& a, const AvaRecord& b) {
            if (std::abs(a.ar) != std::abs(b.ar)) return std::abs(a.ar) > std::abs(b.ar);
            return a.av1 < b.av1;
        };
        std::sort(tv.frequent.begin(), tv.frequent.end(), by_ar_magnitude);
        std::sort(tv.rare.begin(), tv.rare.end(), by_ar_magnitude);
        out.push_back(std::move(tv));
    }
    return out;
}

KnowledgeBase analyze(const DiscretizedTable& table, const std::string& target_attribute,
                      const AnalysisConfig& config, const std::string& source) {
    if (table.records == 0) throw DataError(ErrorCode::EmptyDataset, "no records to analyze");
    if (table.attribute_index(target_attribute) < 0)
        throw DataError(ErrorCode::UnknownTarget,
                        "target attribute '" + target_attribute + "' not in schema");

    KnowledgeBase kb;
    kb.config = config;
    kb.source = source;
    kb.records = table.records;
    kb.dropped = table.dropped;
    kb.fingerprint = table.fingerprint();
    kb.attributes = table.attributes;
    kb.provenance = table.provenance;
    kb.target_attribute = target_attribute;

    auto [index, model] = build_contingency(table);
    kb.av_index = std::move(index);
    kb.contingency = std::move(model);

    const Matrix arv = build_arv(kb.av_index, kb.contingency, config.formula);
    for (std::size_t i = 0; i < arv.rows(); ++i)
        for (std::size_t j = i + 1; j < arv.cols(); ++j)
            if (std::abs(arv(i, j)) > config.tau)
                kb.significant_ar.emplace_back(static_cast<int>(i), static_cast<int>(j));

    const SpectralDecomposition decomposition = eigendecompose(arv);
    kb.eigenvalues = decomposition.eigenvalues;
    kb.spaces = select_spaces(decomposition, kb.av_index, config.tau, config.max_ds);

    for (const auto& group :
         form_pattern_groups(kb.spaces, kb.av_index, config.tau)) {
        const DisentangledSpace* space = nullptr;
        for (const auto& s : kb.spaces)
            if (s.ds_id == group.ds_id) space = &s;
        if (!space) throw InternalError("pattern group without its space");
        GroupRecord rec;
        rec.subgroups =
            form_subgroups(group, *space, kb.av_index, config.tau, config.subgroup_mode);
        rec.group = group;
        kb.groups.push_back(std::move(rec));
    }

    kb.targets = extract_target_patterns(table, kb.av_index, kb.contingency, kb.spaces,
                                         kb.groups, target_attribute, config);

    for (const auto& tv : kb.targets) {
        for (const auto* list : {&tv.frequent, &tv.rare}) {
            for (const auto& rec : *list) {
                PatternCoverage cov;
                cov.target_av = rec.av2;
                cov.partner_av = rec.av1;
                cov.records = coverage(std::vector<int>{rec.av1, rec.av2}, table, kb.av_index);
                kb.coverage.push_back(std::move(cov));
            }
        }
    }
    return kb;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

nlohmann::ordered_json ava_to_json(const AvaRecord& rec, const AvIndex& index) {
    nlohmann::ordered_json j;
    j["attribute"] = index.entries[rec.av1].attribute;
    j["value"] = index.entries[rec.av1].value;
    j["av"] = rec.av1;
    j["support"] = rec.support;
    j["confidence"] = rec.confidence;
    j["ar"] = rec.ar;
    j["rar"] = rec.best_rar;
    j["ds"] = rec.ds_id;
    j["pg"] = rec.pg_id;
    j["subpg"] = rec.subpg_id;
    j["count"] = rec.count;
    return j;
}

AvaRecord ava_from_json(const nlohmann::json& j, int target_av, AvaClass cls) {
    AvaRecord rec;
    rec.av1 = j.at("av").get<int>();
    rec.av2 = target_av;
    rec.support = j.at("support").get<double>();
    rec.confidence = j.at("confidence").get<double>();
    rec.ar = j.at("ar").get<double>();
    rec.best_rar = j.at("rar").get<double>();
    rec.ds_id = j.at("ds").get<int>();
    rec.pg_id = j.at("pg").get<int>();
    rec.subpg_id = j.at("subpg").get<int>();
    rec.count = j.at("count").get<std::int64_t>();
    rec.classification = cls;
    return rec;
}

const char* formula_name(ArFormula f) {
    return f == ArFormula::Standard ? "standard" : "literal";
}

const char* subgroup_mode_name(SubgroupMode m) {
    return m == SubgroupMode::Components ? "components" : "cliques";
}

}  // namespace

nlohmann::ordered_json kb_to_json(const KnowledgeBase& kb) {
    nlohmann::ordered_json doc;
    doc["format_version"] = kb.format_version;

    nlohmann::ordered_json config;
    config["tau"] = kb.config.tau;
    config["max_ds"] = kb.config.max_ds;
    config["formula"] = formula_name(kb.config.formula);
    config["subgroups"] = subgroup_mode_name(kb.config.subgroup_mode);
    doc["config"] = std::move(config);

    nlohmann::ordered_json dataset;
    dataset["source"] = kb.source;
    dataset["records"] = kb.records;
    dataset["dropped"] = kb.dropped;
    dataset["fingerprint"] = kb.fingerprint;
    doc["dataset"] = std::move(dataset);

    nlohmann::ordered_json attrs = nlohmann::ordered_json::array();
    for (std::size_t a = 0; a < kb.attributes.size(); ++a) {
        nlohmann::ordered_json attr;
        attr["name"] = kb.attributes[a].name;
        attr["role"] = kb.attributes[a].role == Role::Target ? "target" : "feature";
        attr["labels"] = kb.attributes[a].labels;
        attrs.push_back(std::move(attr));
    }
    doc["attributes"] = std::move(attrs);

    nlohmann::ordered_json provenance = nlohmann::ordered_json::array();
    for (const auto& prov : kb.provenance) {
        nlohmann::ordered_json p;
        p["attribute"] = prov.attribute;
        p["mode"] = bin_mode_to_string(prov.mode);
        if (!prov.cutpoints.empty()) p["cutpoints"] = prov.cutpoints;
        if (!prov.bins.empty()) {
            nlohmann::ordered_json bins = nlohmann::ordered_json::array();
            for (const auto& bin : prov.bins) {
                nlohmann::ordered_json b;
                b["label"] = bin.label;
                b["count"] = bin.count;
                if (!bin.empty) b["interval"] = {bin.lo, bin.hi};
                bins.push_back(std::move(b));
            }
            p["bins"] = std::move(bins);
        }
        if (!prov.level_map.empty()) {
            nlohmann::ordered_json map = nlohmann::ordered_json::object();
            for (const auto& [src, dst] : prov.level_map) map[src] = dst;
            p["map"] = std::move(map);
        }
        provenance.push_back(std::move(p));
    }
    doc["provenance"] = std::move(provenance);

    nlohmann::ordered_json avs = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < kb.av_index.size(); ++i) {
        nlohmann::ordered_json av;
        av["attribute"] = kb.av_index.entries[i].attribute;
        av["value"] = kb.av_index.entries[i].value;
        av["occ"] = kb.contingency.occ[i];
        avs.push_back(std::move(av));
    }
    doc["av_index"] = std::move(avs);

    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < kb.av_index.size(); ++i)
        for (std::size_t j = i + 1; j < kb.av_index.size(); ++j) {
            if (!kb.av_index.cross_attribute(static_cast<int>(i), static_cast<int>(j))) continue;
            const std::int64_t count = kb.contingency.pair(static_cast<int>(i), static_cast<int>(j));
            if (count > 0) pairs.push_back({i, j, count});
        }
    doc["pair_counts"] = std::move(pairs);

    doc["eigenvalues"] = kb.eigenvalues;

    nlohmann::ordered_json sig = nlohmann::ordered_json::array();
    for (const auto& [i, j] : kb.significant_ar) sig.push_back({i, j});
    doc["significant_ar_cells"] = std::move(sig);

    nlohmann::ordered_json spaces = nlohmann::ordered_json::array();
    for (const auto& space : kb.spaces) {
        nlohmann::ordered_json s;
        s["ds"] = space.ds_id;
        s["eigenvalue"] = space.eigenvalue;
        s["loading"] = space.loading;
        nlohmann::ordered_json rars = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < kb.av_index.size(); ++i)
            for (std::size_t j = i + 1; j < kb.av_index.size(); ++j)
                if (kb.av_index.cross_attribute(static_cast<int>(i), static_cast<int>(j)) &&
                    space.rarv(i, j) > kb.config.tau)
                    rars.push_back({i, j, space.rarv(i, j)});
        s["significant_rar"] = std::move(rars);
        spaces.push_back(std::move(s));
    }
    doc["spaces"] = std::move(spaces);

    nlohmann::ordered_json groups = nlohmann::ordered_json::array();
    for (const auto& rec : kb.groups) {
        nlohmann::ordered_json g;
        g["name"] = rec.group.name();
        g["ds"] = rec.group.ds_id;
        g["pg"] = rec.group.pg_id;
        g["polarity"] = rec.group.pg_id == 1 ? "positive" : "negative";
        g["members"] = rec.group.members;
        nlohmann::ordered_json subs = nlohmann::ordered_json::array();
        for (const auto& sub : rec.subgroups) {
            nlohmann::ordered_json s;
            s["subpg"] = sub.subpg_id;
            s["members"] = sub.members;
            if (sub.cross_polarity) s["cross_polarity"] = true;
            subs.push_back(std::move(s));
        }
        g["subgroups"] = std::move(subs);
        groups.push_back(std::move(g));
    }
    doc["groups"] = std::move(groups);

    nlohmann::ordered_json target;
    target["attribute"] = kb.target_attribute;
    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    for (const auto& tv : kb.targets) {
        nlohmann::ordered_json v;
        v["value"] = tv.value;
        v["av"] = tv.target_av;
        v["occ"] = tv.occ;
        v["degenerate"] = tv.degenerate;
        nlohmann::ordered_json freq = nlohmann::ordered_json::array();
        for (const auto& rec : tv.frequent) freq.push_back(ava_to_json(rec, kb.av_index));
        v["frequent"] = std::move(freq);
        nlohmann::ordered_json rare = nlohmann::ordered_json::array();
        for (const auto& rec : tv.rare) rare.push_back(ava_to_json(rec, kb.av_index));
        v["rare"] = std::move(rare);
        values.push_back(std::move(v));
    }
    target["values"] = std::move(values);
    doc["target"] = std::move(target);

    nlohmann::ordered_json cov = nlohmann::ordered_json::array();
    for (const auto& c : kb.coverage) {
        nlohmann::ordered_json entry;
        entry["pattern"] = {c.target_av, c.partner_av};
        entry["records"] = c.records;
        cov.push_back(std::move(entry));
    }
    doc["coverage"] = std::move(cov);
    return doc;
}

KnowledgeBase kb_from_json(const nlohmann::json& doc) {
    try {
        KnowledgeBase kb;
        kb.format_version = doc.at("format_version").get<int>();
        if (kb.format_version != 1)
            throw DataError(ErrorCode::BadKnowledgeBase,
                            "unsupported format_version " + std::to_string(kb.format_version));

        const auto& config = doc.at("config");
        kb.config.tau = config.at("tau").get<double>();
        kb.config.max_ds = config.at("max_ds").get<int>();
        kb.config.formula = config.at("formula").get<std::string>() == "literal"
                                ? ArFormula::LiteralPrint
                                : ArFormula::Standard;
        kb.config.subgroup_mode = config.at("subgroups").get<std::string>() == "cliques"
                                      ? SubgroupMode::Cliques
                                      : SubgroupMode::Components;

        const auto& dataset = doc.at("dataset");
        kb.source = dataset.at("source").get<std::string>();
        kb.records = dataset.at("records").get<std::size_t>();
        kb.dropped = dataset.at("dropped").get<std::size_t>();
        kb.fingerprint = dataset.at("fingerprint").get<std::uint64_t>();

        for (const auto& a : doc.at("attributes")) {
            DiscAttribute attr;
            attr.name = a.at("name").get<std::string>();
            attr.role = a.at("role").get<std::string>() == "target" ? Role::Target : Role::Feature;
            attr.labels = a.at("labels").get<std::vector<std::string>>();
            kb.attributes.push_back(std::move(attr));
        }
        for (const auto& p : doc.at("provenance")) {
            AttributeProvenance prov;
            prov.attribute = p.at("attribute").get<std::string>();
            const std::string mode = p.at("mode").get<std::string>();
            prov.mode = mode == "level_map"          ? BinSpec::Mode::LevelMap
                        : mode == "equal_frequency"  ? BinSpec::Mode::EqualFrequency
                                                     : BinSpec::Mode::ExplicitCutpoints;
            if (p.contains("cutpoints")) prov.cutpoints = p.at("cutpoints").get<std::vector<double>>();
            if (p.contains("bins"))
                for (const auto& b : p.at("bins")) {
                    BinRealization bin;
                    bin.label = b.at("label").get<std::string>();
                    bin.count = b.at("count").get<std::size_t>();
                    if (b.contains("interval")) {
                        bin.lo = b.at("interval")[0].get<double>();
                        bin.hi = b.at("interval")[1].get<double>();
                        bin.empty = false;
                    }
                    prov.bins.push_back(std::move(bin));
                }
            if (p.contains("map"))
                for (const auto& [src, dst] : p.at("map").items())
                    prov.level_map[src] = dst.get<std::string>();
            kb.provenance.push_back(std::move(prov));
        }

        // Rebuild the AV index and attribute spans from the attribute order.
        {
            int attr_id = 0;
            std::size_t cursor = 0;
            const auto& avs = doc.at("av_index");
            for (const auto& attr : kb.attributes) {
                const int first = static_cast<int>(cursor);
                for (const auto& label : attr.labels) {
                    if (cursor >= avs.size())
                        throw DataError(ErrorCode::BadKnowledgeBase, "av_index shorter than labels");
                    const auto& av = avs[cursor];
                    if (av.at("attribute").get<std::string>() != attr.name ||
                        av.at("value").get<std::string>() != label)
                        throw DataError(ErrorCode::BadKnowledgeBase, "av_index out of order");
                    kb.av_index.entries.push_back({attr.name, label, attr_id});
                    kb.contingency.occ.push_back(av.at("occ").get<std::int64_t>());
                    ++cursor;
                }
                kb.av_index.attribute_span.emplace_back(first, static_cast<int>(cursor));
                ++attr_id;
            }
            if (cursor != avs.size())
                throw DataError(ErrorCode::BadKnowledgeBase, "av_index longer than labels");
        }
        const std::size_t t = kb.av_index.size();
        kb.contingency.records = kb.records;
        kb.contingency.dim = t;
        kb.contingency.occ_pair.assign(t * t, 0);
        for (const auto& entry : doc.at("pair_counts")) {
            const int i = entry[0].get<int>();
            const int j = entry[1].get<int>();
            const std::int64_t count = entry[2].get<std::int64_t>();
            if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= t ||
                static_cast<std::size_t>(j) >= t)
                throw DataError(ErrorCode::BadKnowledgeBase, "pair count index out of range");
            kb.contingency.pair_ref(i, j) = count;
            kb.contingency.pair_ref(j, i) = count;
        }

        kb.eigenvalues = doc.at("eigenvalues").get<std::vector<double>>();
        for (const auto& cell : doc.at("significant_ar_cells"))
            kb.significant_ar.emplace_back(cell[0].get<int>(), cell[1].get<int>());

        for (const auto& s : doc.at("spaces")) {
            DisentangledSpace space;
            space.ds_id = s.at("ds").get<int>();
            space.eigenvalue = s.at("eigenvalue").get<double>();
            space.loading = s.at("loading").get<std::vector<double>>();
            if (space.loading.size() != t)
                throw DataError(ErrorCode::BadKnowledgeBase, "loading length mismatch");
            space.rarv = Matrix(t, t);
            for (std::size_t i = 0; i < t; ++i)
                for (std::size_t j = 0; j < t; ++j)
                    space.rarv(i, j) = space.eigenvalue * space.loading[i] * space.loading[j];
            kb.spaces.push_back(std::move(space));
        }

        for (const auto& g : doc.at("groups")) {
            GroupRecord rec;
            rec.group.ds_id = g.at("ds").get<int>();
            rec.group.pg_id = g.at("pg").get<int>();
            rec.group.members = g.at("members").get<std::vector<int>>();
            for (const auto& s : g.at("subgroups")) {
                SubPatternGroup sub;
                sub.subpg_id = s.at("subpg").get<int>();
                sub.members = s.at("members").get<std::vector<int>>();
                sub.cross_polarity = s.value("cross_polarity", false);
                rec.subgroups.push_back(std::move(sub));
            }
            kb.groups.push_back(std::move(rec));
        }

        const auto& target = doc.at("target");
        kb.target_attribute = target.at("attribute").get<std::string>();
        for (const auto& v : target.at("values")) {
            TargetValuePatterns tv;
            tv.value = v.at("value").get<std::string>();
            tv.target_av = v.at("av").get<int>();
            tv.occ = v.at("occ").get<std::int64_t>();
            tv.degenerate = v.at("degenerate").get<bool>();
            for (const auto& rec : v.at("frequent"))
                tv.frequent.push_back(ava_from_json(rec, tv.target_av, AvaClass::Frequent));
            for (const auto& rec : v.at("rare"))
                tv.rare.push_back(ava_from_json(rec, tv.target_av, AvaClass::Rare));
            kb.targets.push_back(std::move(tv));
        }

        for (const auto& c : doc.at("coverage")) {
            PatternCoverage cov;
            cov.target_av = c.at("pattern")[0].get<int>();
            cov.partner_av = c.at("pattern")[1].get<int>();
            cov.records = c.at("records").get<std::vector<int>>();
            kb.coverage.push_back(std::move(cov));
        }
        return kb;
    } catch (const DataError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(ErrorCode::BadKnowledgeBase, e.what());
    }
}

void save_kb(const KnowledgeBase& kb, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(ErrorCode::ParseFailure, "cannot write knowledge base: " + path);
    out << kb_to_json(kb).dump(1, '\t') << '\n';
}

KnowledgeBase load_kb(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError(ErrorCode::BadKnowledgeBase, "cannot open knowledge base: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(ErrorCode::BadKnowledgeBase, e.what());
    }
    return kb_from_json(doc);
}

}  // namespace pdd
