#include "pdd/table.hpp"

#include <algorithm>
#include <cstdlib>

#include "pdd/csv.hpp"
#include "pdd/errors.hpp"

namespace pdd {

double parse_numeric_cell(const std::string& raw, const std::string& attribute, std::size_t row) {
    const char* begin = raw.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw DataError(ErrorCode::InvalidValue, "row " + std::to_string(row) + ", column '" +
                                                     attribute + "': not a number: '" + raw + "'");
    return value;
}

DatasetTable load_table(const std::string& path, const Schema& schema) {
    auto rows = csv::read_file(path);
    if (rows.empty()) throw DataError(ErrorCode::EmptyFile, "no header row in " + path);

    const std::vector<std::string>& header = rows.front();
    const std::size_t n_attrs = schema.attributes.size();

    // Map each schema attribute to its file column, order-insensitive.
    std::vector<std::size_t> column_of(n_attrs);
    std::vector<bool> used(header.size(), false);
    for (std::size_t a = 0; a < n_attrs; ++a) {
        const std::string& name = schema.attributes[a].name;
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw DataError(ErrorCode::HeaderMismatch, "schema attribute '" + name +
                                                           "' not found in header of " + path);
        column_of[a] = static_cast<std::size_t>(it - header.begin());
        used[column_of[a]] = true;
    }
    for (std::size_t c = 0; c < header.size(); ++c)
        if (!used[c])
            throw DataError(ErrorCode::HeaderMismatch,
                            "file column '" + header[c] + "' is not declared in the schema");

    DatasetTable table;
    table.schema = schema;
    table.columns.assign(n_attrs, {});

    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            throw DataError(ErrorCode::ParseFailure,
                            "row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                                " fields, expected " + std::to_string(header.size()));
        bool complete = true;
        for (std::size_t a = 0; a < n_attrs && complete; ++a)
            if (schema.is_missing_token(row[column_of[a]])) complete = false;
        if (!complete) {
            ++table.dropped;
            continue;
        }
        for (std::size_t a = 0; a < n_attrs; ++a) {
            const AttributeSchema& attr = schema.attributes[a];
            const std::string& cell = row[column_of[a]];
            if (attr.kind == Kind::Numerical) {
                parse_numeric_cell(cell, attr.name, r);
            } else if (!attr.allowed_values.empty()) {
                if (std::find(attr.allowed_values.begin(), attr.allowed_values.end(), cell) ==
                    attr.allowed_values.end())
                    throw DataError(ErrorCode::InvalidValue,
                                    "row " + std::to_string(r) + ", column '" + attr.name +
                                        "': value '" + cell + "' not in allowed values");
            }
            table.columns[a].push_back(cell);
        }
    }
    return table;
}

}  // namespace pdd
