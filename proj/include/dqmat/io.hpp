#pragma once

// File formats: the DQMAT v1 text format for dual quaternion matrices (one
// record of 8 decimal floats per entry, row major) and the line-oriented
// `key = value` report format.

#include <string>
#include <utility>
#include <vector>

#include "dqmat/matrix.hpp"

namespace dqmat {

DQMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const DQMatrix& a);

std::string format_matrix(const DQMatrix& a);
DQMatrix parse_matrix(const std::string& text);

// FNV-1a over the file bytes, rendered as fnv1a:<hex>.
std::string file_digest(const std::string& path);

// Ordered key = value document.
struct Report {
    std::vector<std::pair<std::string, std::string>> items;

    void add(const std::string& key, const std::string& value) { items.emplace_back(key, value); }
    void add(const std::string& key, const char* value) { items.emplace_back(key, value); }
    void add(const std::string& key, double value);
    void add(const std::string& key, Index value) { add(key, std::to_string(value)); }
    void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }

    const std::string* find(const std::string& key) const;
    std::string get(const std::string& key) const;  // throws ParseError if absent

    std::string to_text() const;
    static Report from_text(const std::string& text);
};

void write_report_file(const std::string& path, const Report& r);
Report read_report_file(const std::string& path);

std::string format_double(double v);  // 17 significant digits

}  // namespace dqmat
