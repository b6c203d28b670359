#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "shrinkpath/linalg.hpp"

namespace shrinkpath {

/// Labeled numeric columns of equal length.
struct Table {
    std::string name;
    std::vector<std::string> column_names;
    std::vector<Vector> columns;

    std::size_t row_count() const { return columns.empty() ? 0 : columns.front().size(); }
    std::size_t column_count() const { return columns.size(); }

    /// Index of a named column; throws std::invalid_argument if absent.
    std::size_t column_index(const std::string& name) const;
    const Vector& column(const std::string& name) const;
};

// CSV: header row of column names, comma-separated numeric rows, '.' decimal
// separator, no quoting. Throws on ragged rows, empty input, or cells that
// do not parse as numbers.
Table read_csv(std::istream& in, const std::string& name = "");
Table read_csv_file(const std::string& path);

/// Shortest decimal string that round-trips to the same double ("inf"/"-inf"
/// for infinities).
std::string format_double(double v);

/// Inverse of format_double; throws std::invalid_argument on garbage.
double parse_double(const std::string& s);

}  // namespace shrinkpath
