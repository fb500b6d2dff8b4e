#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdd::csv {

// RFC-4180-style CSV: comma separated, optional double-quote quoting with
// doubled quotes inside quoted fields. Reader accepts LF and CRLF line ends
// and a leading UTF-8 BOM; writer emits LF.

std::vector<std::vector<std::string>> read_file(const std::string& path);
std::vector<std::vector<std::string>> read_stream(std::istream& in);

void write_file(const std::string& path, const std::vector<std::vector<std::string>>& rows);
std::string format_row(const std::vector<std::string>& fields);

}  // namespace pdd::csv
