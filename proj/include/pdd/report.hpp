#pragma once

#include <string>

#include "pdd/kb.hpp"
#include "pdd/miner.hpp"

namespace pdd {

// Human-readable pattern tables: per target value a frequent and a rare
// section, grouped under DS/PG/SubPG headers, sorted by descending |AR|,
// numbers rounded to two decimals.
std::string render_text_report(const KnowledgeBase& kb);

// Flat machine-readable rows at full precision.
std::string render_csv_report(const KnowledgeBase& kb);

// The target section of the knowledge base as a standalone document.
std::string render_json_report(const KnowledgeBase& kb);

std::string render_comparison(const ComparisonReport& report, const AvIndex& index);

}  // namespace pdd
