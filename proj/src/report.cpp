#include "pdd/report.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

namespace pdd {

namespace {

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string full(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void pad(std::string& line, std::size_t width) {
    if (line.size() < width) line.append(width - line.size(), ' ');
}

// Rows of one section keyed by (ds, pg, subpg), preserving the |AR| order
// inside each group.
std::map<std::tuple<int, int, int>, std::vector<const AvaRecord*>> group_rows(
    const std::vector<AvaRecord>& records) {
    std::map<std::tuple<int, int, int>, std::vector<const AvaRecord*>> grouped;
    for (const auto& rec : records)
        grouped[{rec.ds_id, rec.pg_id, rec.subpg_id}].push_back(&rec);
    return grouped;
}

void render_section(std::ostringstream& out, const KnowledgeBase& kb,
                    const std::vector<AvaRecord>& records) {
    if (records.empty()) {
        out << "none\n";
        return;
    }
    const auto grouped = group_rows(records);
    int group_no = 0;
    for (const auto& [key, rows] : grouped) {
        const auto& [ds, pg, subpg] = key;
        ++group_no;
        out << "Group " << group_no << " (Discovered in DS" << ds << "_PG" << pg << ", SubPG"
            << subpg << ")\n";
        std::string header = "Support";
        pad(header, 10);
        header += "Confidence";
        pad(header, 22);
        header += "SR";
        pad(header, 32);
        header += "Attribute";
        pad(header, 52);
        header += "Attribute Value";
        out << header << '\n';
        for (const AvaRecord* rec : rows) {
            std::string line = fixed2(rec->support);
            pad(line, 10);
            line += fixed2(rec->confidence);
            pad(line, 22);
            line += fixed2(rec->ar);
            pad(line, 32);
            line += kb.av_index.entries[rec->av1].attribute;
            pad(line, 52);
            line += kb.av_index.entries[rec->av1].value;
            out << line << '\n';
        }
    }
}

}  // namespace

std::string render_text_report(const KnowledgeBase& kb) {
    std::ostringstream out;
    out << "Pattern report\n";
    out << "Dataset: " << (kb.source.empty() ? "(unnamed)" : kb.source) << "  M=" << kb.records
        << "  T=" << kb.av_index.size() << "  tau=" << fixed2(kb.config.tau) << "\n";
    out << "Target attribute: " << kb.target_attribute << "\n";
    out << "Retained disentangled spaces: " << kb.spaces.size() << "\n";
    for (const auto& tv : kb.targets) {
        out << "\n=== Frequent patterns for " << kb.target_attribute << " = " << tv.value;
        if (tv.degenerate) out << " (no occurrences)";
        out << " ===\n";
        render_section(out, kb, tv.frequent);
        out << "\n=== Rare patterns for " << kb.target_attribute << " = " << tv.value;
        if (tv.degenerate) out << " (no occurrences)";
        out << " ===\n";
        render_section(out, kb, tv.rare);
    }
    return out.str();
}

std::string render_csv_report(const KnowledgeBase& kb) {
    std::ostringstream out;
    out << "target_value,section,ds,pg,subpg,support,confidence,ar,rar,count,attribute,value\n";
    for (const auto& tv : kb.targets) {
        for (const auto* list : {&tv.frequent, &tv.rare}) {
            const char* section = list == &tv.frequent ? "frequent" : "rare";
            for (const auto& rec : *list) {
                out << tv.value << ',' << section << ',' << rec.ds_id << ',' << rec.pg_id << ','
                    << rec.subpg_id << ',' << full(rec.support) << ',' << full(rec.confidence)
                    << ',' << full(rec.ar) << ',' << full(rec.best_rar) << ',' << rec.count << ','
                    << kb.av_index.entries[rec.av1].attribute << ','
                    << kb.av_index.entries[rec.av1].value << '\n';
            }
        }
    }
    return out.str();
}

std::string render_json_report(const KnowledgeBase& kb) {
    nlohmann::ordered_json doc = kb_to_json(kb);
    nlohmann::ordered_json report;
    report["target"] = doc.at("target");
    report["groups"] = doc.at("groups");
    return report.dump(1, '\t') + "\n";
}

std::string render_comparison(const ComparisonReport& report, const AvIndex& index) {
    std::ostringstream out;
    out << "Criteria comparison for target '" << report.target_attribute << "'\n";
    out << "Minority class: " << report.target_attribute << " = " << report.minority_value
        << "\n";
    for (const auto& ranking : report.rankings) {
        out << "\n--- Top " << report.top_n << " pairs by " << ranking.criterion << " ---\n";
        if (ranking.top.empty()) {
            out << "none\n";
        } else {
            std::string header = "rank";
            pad(header, 6);
            header += "support";
            pad(header, 16);
            header += "confidence";
            pad(header, 28);
            header += "AR";
            pad(header, 38);
            header += "RAR";
            pad(header, 48);
            header += "pair";
            out << header << '\n';
            int rank = 0;
            for (const auto& rec : ranking.top) {
                std::string line = std::to_string(++rank);
                pad(line, 6);
                line += fixed2(rec.support);
                pad(line, 16);
                line += fixed2(rec.confidence);
                pad(line, 28);
                line += fixed2(rec.ar);
                pad(line, 38);
                line += fixed2(rec.best_rar);
                pad(line, 48);
                line += index.display(rec.av1) + " <-> " + index.display(rec.av2);
                out << line << '\n';
            }
        }
        out << "minority-class pairs in list: " << ranking.minority_hits << "\n";
    }
    out << "\n--- Overlap of top lists (shared pairs) ---\n";
    for (std::size_t i = 0; i < report.rankings.size(); ++i) {
        for (std::size_t j = 0; j < report.rankings.size(); ++j) {
            if (j) out << ' ';
            out << report.rankings[i].criterion << "/" << report.rankings[j].criterion << "="
                << report.overlap[i][j];
        }
        out << '\n';
    }
    for (const auto& value : report.per_value) {
        out << "\n=== " << report.target_attribute << " = " << value.value << " ===\n";
        for (const auto& ranking : value.rankings) {
            out << "top by " << ranking.criterion << ":";
            if (ranking.top.empty()) out << " none";
            int shown = 0;
            for (const auto& rec : ranking.top) {
                if (++shown > 5) break;
                out << "  " << index.display(rec.av1);
            }
            if (ranking.top.size() > 5) out << "  ...";
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace pdd
