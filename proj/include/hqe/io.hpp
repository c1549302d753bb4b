#pragma once

#include <string>
#include <vector>

namespace hqe {

// Seventeen significant digits, enough for an exact round trip.
std::string format_double(double x);

std::string read_file(const std::string& path);
// Writes to a sibling temporary file and renames it over the target.
void atomic_write(const std::string& path, const std::string& content);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}
    void add_row(const std::vector<double>& values);
    void add_row(const std::vector<std::string>& cells);  // preformatted, e.g. labels
    std::string str() const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace hqe
