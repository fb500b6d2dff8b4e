#include "pdd/csv.hpp"

#include <fstream>
#include <sstream>

#include "pdd/errors.hpp"

namespace pdd::csv {

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n\r") != std::string::npos;
}

}  // namespace

std::vector<std::vector<std::string>> read_stream(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_has_content = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
        row_has_content = false;
    };

    char c;
    bool first_char = true;
    while (in.get(c)) {
        if (first_char) {
            first_char = false;
            // UTF-8 BOM
            if (static_cast<unsigned char>(c) == 0xEF) {
                char b1 = 0, b2 = 0;
                if (in.get(b1) && in.get(b2) && static_cast<unsigned char>(b1) == 0xBB &&
                    static_cast<unsigned char>(b2) == 0xBF) {
                    continue;
                }
                throw DataError(ErrorCode::ParseFailure, "malformed byte order mark");
            }
        }
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            row_has_content = true;
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                row_has_content = true;
                break;
            case ',':
                end_field();
                row_has_content = true;
                break;
            case '\r':
                break;
            case '\n':
                if (row_has_content || !row.empty()) end_row();
                break;
            default:
                field.push_back(c);
                row_has_content = true;
                break;
        }
    }
    if (in_quotes) throw DataError(ErrorCode::ParseFailure, "unterminated quoted field");
    if (row_has_content || !row.empty()) end_row();
    return rows;
}

std::vector<std::vector<std::string>> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(ErrorCode::ParseFailure, "cannot open file: " + path);
    return read_stream(in);
}

std::string format_row(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line.push_back(',');
        const std::string& f = fields[i];
        if (needs_quoting(f)) {
            line.push_back('"');
            for (char c : f) {
                if (c == '"') line.push_back('"');
                line.push_back(c);
            }
            line.push_back('"');
        } else {
            line += f;
        }
    }
    line.push_back('\n');
    return line;
}

void write_file(const std::string& path, const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(ErrorCode::ParseFailure, "cannot open file for writing: " + path);
    for (const auto& row : rows) out << format_row(row);
}

}  // namespace pdd::csv
