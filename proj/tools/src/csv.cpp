#include "csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace opamech::tools {

std::string format_number(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) return "nan";
    return {buf, ptr};
}

std::string sanitize_cell(std::string text) {
    std::replace(text.begin(), text.end(), ',', ';');
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

std::string CsvWriter::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    return out.str();
}

void CsvWriter::write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << to_string();
}

std::optional<std::size_t> CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    return std::nullopt;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    CsvTable table;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = s.find(',', start);
            if (pos == std::string::npos) {
                cells.push_back(s.substr(start));
                break;
            }
            cells.push_back(s.substr(start, pos - start));
            start = pos + 1;
        }
        return cells;
    };
    if (!std::getline(f, line)) throw std::runtime_error("empty CSV: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.header = split(line);
    table.columns.resize(table.header.size());

    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line);
        for (std::size_t i = 0; i < table.header.size(); ++i) {
            double v = std::numeric_limits<double>::quiet_NaN();
            if (i < cells.size() && !cells[i].empty()) {
                const char* b = cells[i].data();
                const char* e = b + cells[i].size();
                double parsed;
                auto [ptr, ec] = std::from_chars(b, e, parsed);
                if (ec == std::errc{} && ptr == e) v = parsed;
            }
            table.columns[i].push_back(v);
        }
    }
    return table;
}

} // namespace opamech::tools
