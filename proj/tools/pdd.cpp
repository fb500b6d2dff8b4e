#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pdd/csv.hpp"
#include "pdd/discretize.hpp"
#include "pdd/errors.hpp"
#include "pdd/kb.hpp"
#include "pdd/miner.hpp"
#include "pdd/report.hpp"
#include "pdd/synth.hpp"
#include "pdd/table.hpp"

namespace {

namespace fs = std::filesystem;

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw pdd::DataError(pdd::ErrorCode::ParseFailure,
                             "cannot open for writing: " + path.string());
    out << content;
}

void write_table_csv(const fs::path& path, const pdd::DiscretizedTable& table) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header;
    for (const auto& attr : table.attributes) header.push_back(attr.name);
    rows.push_back(std::move(header));
    for (std::size_t r = 0; r < table.records; ++r) {
        std::vector<std::string> row;
        for (std::size_t a = 0; a < table.attributes.size(); ++a)
            row.push_back(table.attributes[a].labels[table.codes[a][r]]);
        rows.push_back(std::move(row));
    }
    pdd::csv::write_file(path.string(), rows);
}

// Schema describing a discretized table: all categorical, labels final. No
// missing tokens, so the emitted CSV re-ingests losslessly.
pdd::Schema derived_schema(const pdd::DiscretizedTable& table) {
    pdd::Schema schema;
    schema.missing_tokens.clear();
    for (const auto& attr : table.attributes) {
        pdd::AttributeSchema a;
        a.name = attr.name;
        a.kind = pdd::Kind::Categorical;
        a.role = attr.role;
        a.allowed_values = attr.labels;
        schema.attributes.push_back(std::move(a));
    }
    return schema;
}

nlohmann::ordered_json provenance_to_json(const pdd::DiscretizedTable& table) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& prov : table.provenance) {
        nlohmann::ordered_json p;
        p["attribute"] = prov.attribute;
        p["mode"] = pdd::bin_mode_to_string(prov.mode);
        if (!prov.cutpoints.empty()) p["cutpoints"] = prov.cutpoints;
        if (!prov.bins.empty()) {
            nlohmann::ordered_json bins = nlohmann::ordered_json::array();
            for (const auto& bin : prov.bins) {
                nlohmann::ordered_json b;
                b["label"] = bin.label;
                b["count"] = bin.count;
                if (!bin.empty)
                    b["interval"] = pdd::interval_label(bin.lo, bin.hi);
                bins.push_back(std::move(b));
            }
            p["bins"] = std::move(bins);
        }
        if (!prov.level_map.empty()) {
            nlohmann::ordered_json map = nlohmann::ordered_json::object();
            for (const auto& [src, dst] : prov.level_map) map[src] = dst;
            p["map"] = std::move(map);
        }
        doc.push_back(std::move(p));
    }
    return doc;
}

pdd::DiscretizedTable load_and_discretize(const std::string& input, const std::string& schema_path) {
    const pdd::Schema schema = pdd::load_schema(schema_path);
    const pdd::DatasetTable raw = pdd::load_table(input, schema);
    return pdd::discretize_table(raw);
}

// Accepts a number or a confidence-level preset: 95% -> 1.96, 85% -> 1.44,
// 80% -> 1.28.
double parse_tau(const std::string& token) {
    if (token == "95%") return 1.96;
    if (token == "85%") return 1.44;
    if (token == "80%") return 1.28;
    try {
        std::size_t consumed = 0;
        const double value = std::stod(token, &consumed);
        if (consumed == token.size() && value > 0.0) return value;
    } catch (const std::exception&) {
    }
    throw pdd::DataError(pdd::ErrorCode::InvalidValue,
                         "tau must be a positive number or one of 95%, 85%, 80%");
}

int run(int argc, char** argv) {
    CLI::App app{"Pattern discovery and disentanglement engine"};
    app.require_subcommand(1);

    // discretize
    auto* cmd_discretize = app.add_subcommand("discretize", "Discretize a table per its schema");
    std::string d_input, d_schema, d_out;
    cmd_discretize->add_option("--input", d_input, "input CSV")->required();
    cmd_discretize->add_option("--schema", d_schema, "schema JSON")->required();
    cmd_discretize->add_option("--out", d_out, "output directory")->required();

    // analyze
    auto* cmd_analyze = app.add_subcommand("analyze", "Run the full analysis pipeline");
    std::string a_input, a_schema, a_target, a_out;
    pdd::AnalysisConfig config;
    std::string a_formula = "standard", a_subgroups = "components", a_tau = "1.96";
    cmd_analyze->add_option("--input", a_input, "input CSV")->required();
    cmd_analyze->add_option("--schema", a_schema, "schema JSON")->required();
    cmd_analyze->add_option("--target", a_target, "target attribute")->required();
    cmd_analyze->add_option("--tau", a_tau, "significance threshold (number or 95%/85%/80%)");
    cmd_analyze->add_option("--max-ds", config.max_ds, "maximum retained spaces");
    cmd_analyze->add_option("--formula", a_formula, "residual formula")
        ->check(CLI::IsMember({"standard", "literal"}));
    cmd_analyze->add_option("--subgroups", a_subgroups, "subgroup construction")
        ->check(CLI::IsMember({"components", "cliques"}));
    cmd_analyze->add_option("--out", a_out, "knowledge base file")->required();

    // report
    auto* cmd_report = app.add_subcommand("report", "Emit pattern tables from a knowledge base");
    std::string r_kb, r_format = "text", r_out;
    cmd_report->add_option("--kb", r_kb, "knowledge base file")->required();
    cmd_report->add_option("--format", r_format, "output format")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    cmd_report->add_option("--out", r_out, "output file (stdout when omitted)");

    // compare
    auto* cmd_compare = app.add_subcommand("compare", "Compare discovery criteria");
    std::string c_input, c_schema, c_target, c_out;
    double c_minsup = 0.01, c_maxsup = 0.05;
    int c_top = 20;
    cmd_compare->add_option("--input", c_input, "input CSV")->required();
    cmd_compare->add_option("--schema", c_schema, "schema JSON")->required();
    cmd_compare->add_option("--target", c_target, "target attribute")->required();
    cmd_compare->add_option("--minsup", c_minsup, "apriori minimum support");
    cmd_compare->add_option("--maxsup", c_maxsup, "apriori-inverse maximum support");
    cmd_compare->add_option("--top", c_top, "list length per criterion");
    cmd_compare->add_option("--out", c_out, "output file (stdout when omitted)");

    // synth
    auto* cmd_synth = app.add_subcommand("synth", "Generate a synthetic benchmark dataset");
    std::string s_spec, s_out;
    std::uint64_t s_seed = 0;
    bool s_seed_given = false;
    cmd_synth->add_option("--spec", s_spec, "generator spec JSON")->required();
    auto* seed_opt = cmd_synth->add_option("--seed", s_seed, "seed override");
    cmd_synth->add_option("--out", s_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    s_seed_given = seed_opt->count() > 0;

    if (cmd_discretize->parsed()) {
        const auto table = load_and_discretize(d_input, d_schema);
        fs::create_directories(d_out);
        write_table_csv(fs::path(d_out) / "data.csv", table);
        write_text_file(fs::path(d_out) / "schema.json",
                        pdd::schema_to_json(derived_schema(table)).dump(1, '\t') + "\n");
        write_text_file(fs::path(d_out) / "provenance.json",
                        provenance_to_json(table).dump(1, '\t') + "\n");
        std::cout << "discretized " << table.records << " records (" << table.dropped
                  << " dropped), " << table.attributes.size() << " attributes -> " << d_out
                  << "\n";
        return 0;
    }

    if (cmd_analyze->parsed()) {
        config.tau = parse_tau(a_tau);
        config.formula = a_formula == "literal" ? pdd::ArFormula::LiteralPrint
                                                : pdd::ArFormula::Standard;
        config.subgroup_mode = a_subgroups == "cliques" ? pdd::SubgroupMode::Cliques
                                                        : pdd::SubgroupMode::Components;
        const auto table = load_and_discretize(a_input, a_schema);
        const pdd::KnowledgeBase kb = pdd::analyze(table, a_target, config, a_input);
        pdd::save_kb(kb, a_out);
        std::cout << "M=" << kb.records << " dropped=" << kb.dropped
                  << " T=" << kb.av_index.size() << " retained_ds=" << kb.spaces.size()
                  << " frequent=" << kb.frequent_count() << " rare=" << kb.rare_count() << "\n";
        return 0;
    }

    if (cmd_report->parsed()) {
        const pdd::KnowledgeBase kb = pdd::load_kb(r_kb);
        std::string rendered;
        if (r_format == "csv")
            rendered = pdd::render_csv_report(kb);
        else if (r_format == "json")
            rendered = pdd::render_json_report(kb);
        else
            rendered = pdd::render_text_report(kb);
        if (r_out.empty())
            std::cout << rendered;
        else
            write_text_file(r_out, rendered);
        return 0;
    }

    if (cmd_compare->parsed()) {
        const auto table = load_and_discretize(c_input, c_schema);
        const pdd::KnowledgeBase kb = pdd::analyze(table, c_target, pdd::AnalysisConfig{}, c_input);
        const pdd::AprioriResult mined = pdd::apriori(table, c_minsup, 0.0, 2);
        const pdd::ComparisonReport report = pdd::compare_criteria(kb, mined, c_target, c_top);
        std::string rendered = pdd::render_comparison(report, kb.av_index);

        const auto rare_itemsets = pdd::apriori_inverse(table, c_maxsup, 1, 2);
        std::size_t rare_pairs = 0, rare_shared = 0;
        for (const auto& item : rare_itemsets) {
            if (item.avs.size() != 2) continue;
            ++rare_pairs;
            for (const auto& tv : kb.targets)
                for (const auto& rec : tv.rare)
                    if ((rec.av1 == item.avs[0] && rec.av2 == item.avs[1]) ||
                        (rec.av1 == item.avs[1] && rec.av2 == item.avs[0]))
                        ++rare_shared;
        }
        std::ostringstream extra;
        extra << "\n--- Apriori-Inverse (maxsup=" << c_maxsup << ") ---\n"
              << "perfectly rare itemsets: " << rare_itemsets.size() << " (" << rare_pairs
              << " pairs), shared with PDD rare patterns: " << rare_shared << "\n";
        rendered += extra.str();

        if (c_out.empty())
            std::cout << rendered;
        else
            write_text_file(c_out, rendered);
        return 0;
    }

    if (cmd_synth->parsed()) {
        pdd::GeneratorSpec spec = pdd::load_generator_spec(s_spec);
        if (s_seed_given) spec.seed = s_seed;
        auto [table, truth] = pdd::generate(spec);
        fs::create_directories(s_out);
        write_table_csv(fs::path(s_out) / "data.csv", table);
        write_text_file(fs::path(s_out) / "schema.json",
                        pdd::schema_to_json(pdd::generated_schema(spec)).dump(1, '\t') + "\n");
        write_text_file(fs::path(s_out) / "truth.json",
                        pdd::truth_to_json(truth).dump(1, '\t') + "\n");
        std::cout << "generated " << table.records << " records, "
                  << table.attributes.size() << " attributes, " << truth.blocks.size()
                  << " planted blocks -> " << s_out << "\n";
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const pdd::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pdd::InternalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
