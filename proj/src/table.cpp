#include "shrinkpath/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace shrinkpath {

std::size_t Table::column_index(const std::string& col) const {
    auto it = std::find(column_names.begin(), column_names.end(), col);
    if (it == column_names.end())
        throw std::invalid_argument("unknown column name: '" + col + "'");
    return static_cast<std::size_t>(it - column_names.begin());
}

const Vector& Table::column(const std::string& col) const {
    return columns[column_index(col)];
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

}  // namespace

double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument("non-numeric cell: '" + s + "'");
    return value;
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

Table read_csv(std::istream& in, const std::string& name) {
    Table t;
    t.name = name;
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV input");
    if (!line.empty() && line.front() == '\xEF' && line.size() >= 3)
        line.erase(0, 3);  // strip UTF-8 BOM
    t.column_names = split_csv_line(line);
    if (t.column_names.empty()) throw std::invalid_argument("CSV header has no columns");
    t.columns.assign(t.column_names.size(), Vector{});

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != t.column_names.size())
            throw std::invalid_argument("CSV row " + std::to_string(line_no) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(t.column_names.size()));
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (cells[j].empty())
                throw std::invalid_argument("missing value at CSV row " +
                                            std::to_string(line_no) + ", column '" +
                                            t.column_names[j] + "'");
            t.columns[j].push_back(parse_double(cells[j]));
        }
    }
    if (t.row_count() == 0) throw std::invalid_argument("CSV has a header but no data rows");
    return t;
}

Table read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV file: " + path);
    return read_csv(in, path);
}

}  // namespace shrinkpath
