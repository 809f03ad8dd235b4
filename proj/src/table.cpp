#include "ansec/table.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ansec {

std::string ResultTable::format(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void ResultTable::begin_row() {
    rows_.emplace_back();
    rows_.back().reserve(columns_.size());
}

void ResultTable::push(double v) { rows_.back().push_back(format(v)); }
void ResultTable::push(const std::string& v) { rows_.back().push_back(v); }
void ResultTable::push_flag(bool v) { rows_.back().push_back(v ? "1" : "0"); }

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string ResultTable::to_csv() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        out << (i ? "," : "") << csv_escape(columns_[i]);
    }
    out << "\r\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << csv_escape(row[i]);
        }
        out << "\r\n";
    }
    return out.str();
}

void ResultTable::write_csv(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_csv();
}

std::string Metadata::to_text() const {
    std::ostringstream out;
    for (const auto& [key, value] : entries) {
        out << key << ": " << value << "\n";
    }
    if (!deterministic) {
        char buf[64];
        const std::time_t now = std::time(nullptr);
        std::tm tm{};
        gmtime_r(&now, &tm);
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
        out << "timestamp: " << buf << "\n";
    }
    if (!parameter_lines.empty()) {
        out << "[parameters]\n";
        for (const auto& line : parameter_lines) out << line << "\n";
    }
    return out.str();
}

void Metadata::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_text();
}

} // namespace ansec
