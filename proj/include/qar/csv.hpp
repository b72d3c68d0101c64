// csv.hpp — Deterministic CSV rendering

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qar {

// 17 significant digits; non-finite values render as nan / inf / -inf.
std::string format_number(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row);
    const std::vector<std::string>& header() const { return header_; }
    std::size_t size() const { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

void write_text_file(const std::filesystem::path& path, std::string_view content);

} // namespace qar
