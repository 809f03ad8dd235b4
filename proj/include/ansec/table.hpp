#ifndef ANSEC_TABLE_HPP
#define ANSEC_TABLE_HPP

#include <string>
#include <vector>

namespace ansec {

/// Column-oriented result records with a fixed column order. Numeric cells
/// are formatted to 12 significant digits at insertion time.
class ResultTable {
public:
    explicit ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    static std::string format(double v);

    void begin_row();
    void push(double v);
    void push(const std::string& v);
    void push_flag(bool v);

    std::size_t row_count() const { return rows_.size(); }
    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    /// RFC-4180-style CSV with a header row.
    std::string to_csv() const;
    void write_csv(const std::string& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

/// Sidecar metadata: plain "key: value" lines plus a parameter block.
/// The timestamp line is omitted when deterministic is set.
struct Metadata {
    std::vector<std::pair<std::string, std::string>> entries;
    std::vector<std::string> parameter_lines;
    bool deterministic = false;

    void add(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }
    std::string to_text() const;
    void write(const std::string& path) const;
};

} // namespace ansec

#endif
