#include "hqe/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hqe/core.hpp"

namespace hqe {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw FormatError("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

void CsvTable::add_row(const std::vector<double>& values) {
    if (values.size() != columns_.size()) throw FormatError("CsvTable: row width does not match the header");
    std::vector<std::string> cells;
    for (double v : values) cells.push_back(format_double(v));
    rows_.push_back(std::move(cells));
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size()) throw FormatError("CsvTable: row width does not match the header");
    rows_.push_back(cells);
}

std::string CsvTable::str() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

}  // namespace hqe
