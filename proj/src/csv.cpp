#include "odt/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <unordered_map>

namespace odt {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    s = s.substr(b, e - b);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return std::string(s);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

std::optional<double> parse_number(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (*first == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return v;
}

std::optional<std::size_t> parse_index(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

struct Row {
    std::size_t line_number;
    std::vector<std::string> cells;
};

}  // namespace

Dataset parse_csv(std::istream& in, const LabelColumn& label, double epsilon) {
    std::vector<Row> rows;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        rows.push_back({line_number, split_line(line)});
    }
    if (rows.empty()) throw DataError("CSV input is empty");

    const std::size_t arity = rows.front().cells.size();
    if (arity < 2) throw DataError("CSV needs at least one feature column and one label column");
    for (const Row& r : rows)
        if (r.cells.size() != arity)
            throw DataError("row " + std::to_string(r.line_number) + ": expected " + std::to_string(arity) +
                            " cells, found " + std::to_string(r.cells.size()));

    std::optional<std::size_t> label_col;
    bool has_header = false;
    if (label.column.empty()) {
        label_col = arity - 1;
    } else if (auto idx = parse_index(label.column)) {
        if (*idx >= arity) throw DataError("label column index " + label.column + " out of range");
        label_col = *idx;
    } else {
        has_header = true;
        const auto& header = rows.front().cells;
        for (std::size_t c = 0; c < arity; ++c)
            if (header[c] == label.column) label_col = c;
        if (!label_col) throw DataError("label column '" + label.column + "' not found in header");
    }
    if (!has_header) {
        const auto& first = rows.front().cells;
        for (std::size_t c = 0; c < arity; ++c)
            if (c != *label_col && !parse_number(first[c])) has_header = true;
    }

    std::vector<std::string> feature_names;
    if (has_header) {
        for (std::size_t c = 0; c < arity; ++c)
            if (c != *label_col) feature_names.push_back(rows.front().cells[c]);
    }

    const std::size_t first_data = has_header ? 1 : 0;
    const std::size_t n = rows.size() - first_data;
    if (n == 0) throw DataError("CSV contains a header but no data rows");
    const std::size_t p = arity - 1;

    std::vector<double> values(n * p);
    std::vector<Label> labels(n);
    std::vector<std::string> label_names;
    std::unordered_map<std::string, Label> label_ids;

    for (std::size_t r = 0; r < n; ++r) {
        const Row& row = rows[first_data + r];
        std::size_t f = 0;
        for (std::size_t c = 0; c < arity; ++c) {
            const std::string& cell = row.cells[c];
            if (cell.empty())
                throw DataError("row " + std::to_string(row.line_number) + ": missing value in column " +
                                std::to_string(c));
            if (c == *label_col) {
                auto [it, inserted] = label_ids.try_emplace(cell, static_cast<Label>(label_names.size()));
                if (inserted) label_names.push_back(cell);
                labels[r] = it->second;
                continue;
            }
            auto v = parse_number(cell);
            if (!v || !std::isfinite(*v))
                throw DataError("row " + std::to_string(row.line_number) + ": non-numeric value '" + cell +
                                "' in column " + std::to_string(c));
            values[f * n + r] = *v;
            ++f;
        }
    }
    return Dataset(std::move(values), p, std::move(labels), std::move(label_names), std::move(feature_names),
                   epsilon);
}

Dataset load_csv(const std::filesystem::path& path, const LabelColumn& label, double epsilon) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return parse_csv(in, label, epsilon);
}

}  // namespace odt
