#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace chargelimit::cli {

// Comma-separated, '.' decimal point, mandatory header row, '\n' line ends.
// Cells never contain commas, quotes or newlines, so no quoting is done.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const CsvTable& table);

// Throws ParseError on a missing header or ragged rows.
CsvTable parse_csv(std::string_view text);

/// Shortest decimal string that reads back to exactly `value`.
std::string format_number(double value);

/// Six significant figures for tables meant for people.
std::string format_human(double value);

}  // namespace chargelimit::cli
