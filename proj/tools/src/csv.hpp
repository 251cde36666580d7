#ifndef OPAMECH_TOOLS_CSV_HPP
#define OPAMECH_TOOLS_CSV_HPP

#include <optional>
#include <string>
#include <vector>

namespace opamech::tools {

// Shortest round-trip decimal representation (std::to_chars).
std::string format_number(double v);

// One CSV document: fixed header, rows of preformatted cells. Cells never
// contain commas; free-text cells (the error column) have commas replaced.
struct CsvWriter {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(const std::string& path) const;
    std::string to_string() const;
};

std::string sanitize_cell(std::string text);

struct CsvTable {
    std::vector<std::string> header;
    // column-major numeric view; non-numeric/empty cells are NaN
    std::vector<std::vector<double>> columns;

    std::optional<std::size_t> column_index(const std::string& name) const;
    std::size_t row_count() const { return columns.empty() ? 0 : columns[0].size(); }
};

CsvTable read_csv(const std::string& path);

} // namespace opamech::tools

#endif
