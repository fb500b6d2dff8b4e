#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pdd/schema.hpp"

namespace pdd {

// Complete-case relational table. Rows containing a missing-value token were
// dropped at load time; record ids are 0..M-1 in file order of the kept rows.
struct DatasetTable {
    Schema schema;
    std::vector<std::vector<std::string>> columns;  // [attribute][record]
    std::size_t dropped = 0;

    std::size_t record_count() const { return columns.empty() ? 0 : columns.front().size(); }
    std::size_t attribute_count() const { return schema.attributes.size(); }
};

DatasetTable load_table(const std::string& path, const Schema& schema);

// Parse a cell of a numerical attribute; throws InvalidValue with row/column
// context on failure. `row` is the 1-based data row for error messages.
double parse_numeric_cell(const std::string& raw, const std::string& attribute, std::size_t row);

}  // namespace pdd
