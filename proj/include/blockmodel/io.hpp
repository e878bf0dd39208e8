#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "network.hpp"

namespace blockmodel::io {

/// Raised for unreadable or malformed input; `line` is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class HeaderMode { detect, present, absent };

struct DenseOptions {
    HeaderMode header = HeaderMode::detect;
    bool diagonal_relevant = false;
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\r' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '"')) s.remove_suffix(1);
    return s;
}

inline std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::vector<std::string> split(std::string_view line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = line.find(delim, start);
        out.emplace_back(trim(line.substr(start, end == std::string_view::npos ? end : end - start)));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

/// Shortest text that reads back to the same double.
inline std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

/// Dense matrix, comma- or tab-separated (tab if the first line has a tab).
/// An optional header row of column labels (with a corner cell) and row labels
/// in the first column are recognized; empty and missing trailing cells are 0.
inline ValuedNetwork read_dense(std::istream& in, const DenseOptions& opt = {}) {
    std::vector<std::pair<std::size_t, std::string>> lines;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line.front() == '#') continue;
        lines.emplace_back(lineno, line);
    }
    if (lines.empty()) throw ParseError("input contains no matrix rows", 0);
    const char delim = lines.front().second.find('\t') != std::string::npos ? '\t' : ',';

    std::vector<std::vector<std::string>> rows;
    for (const auto& [no, text] : lines) rows.push_back(split(text, delim));

    bool header = false;
    if (opt.header == HeaderMode::present) {
        header = true;
    } else if (opt.header == HeaderMode::detect) {
        const auto& first = rows.front();
        bool any_text = false;
        bool rest_filled = first.size() > 1;
        for (std::size_t c = 0; c < first.size(); ++c) {
            if (!first[c].empty() && !parse_number(first[c])) any_text = true;
            if (c > 0 && first[c].empty()) rest_filled = false;
        }
        // A labelled corner-form header: empty corner, all labels present, and
        // one more field than there are data rows below it.
        bool labelled_rows = true;
        for (std::size_t r = 1; r < rows.size(); ++r)
            if (rows[r].empty() || rows[r][0].empty()) labelled_rows = false;
        const bool corner_form = first.front().empty() && rest_filled &&
                                 first.size() == rows.size() && labelled_rows;
        header = any_text || corner_form;
    }

    std::vector<std::string> col_labels;
    std::size_t first_data = 0;
    if (header) {
        col_labels = rows.front();
        first_data = 1;
    }
    const std::size_t n = rows.size() - first_data;
    if (n == 0) throw ParseError("input contains a header but no matrix rows", lines.front().first);

    // Row labels: present when the header has a corner cell, or when any data
    // row starts with a non-numeric field.
    bool row_labels = header && col_labels.size() == n + 1;
    if (!header) {
        for (std::size_t r = 0; r < n; ++r)
            if (!rows[r].empty() && !rows[r][0].empty() && !parse_number(rows[r][0])) row_labels = true;
    }
    if (header && row_labels) col_labels.erase(col_labels.begin());
    if (header && col_labels.size() != n)
        throw ParseError("header has " + std::to_string(col_labels.size()) + " labels for " +
                             std::to_string(n) + " rows",
                         lines.front().first);

    std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
    std::vector<std::string> labels = col_labels;
    std::vector<std::string> row_names;
    for (std::size_t r = 0; r < n; ++r) {
        const auto& fields = rows[first_data + r];
        const std::size_t lno = lines[first_data + r].first;
        const std::size_t offset = row_labels ? 1 : 0;
        if (row_labels) row_names.push_back(fields.empty() ? std::string() : fields[0]);
        if (fields.size() > n + offset) {
            // Trailing empty fields are tolerated.
            for (std::size_t c = n + offset; c < fields.size(); ++c)
                if (!fields[c].empty())
                    throw ParseError("row has more than " + std::to_string(n) + " values (matrix is not square)", lno);
        }
        for (std::size_t c = 0; c + offset < fields.size() && c < n; ++c) {
            const std::string& cell = fields[c + offset];
            if (cell.empty()) continue;
            const auto v = parse_number(cell);
            if (!v) throw ParseError("cannot parse '" + cell + "' as a number", lno);
            if (!std::isfinite(*v)) throw ParseError("non-finite value '" + cell + "'", lno);
            matrix[r][c] = *v;
        }
    }
    if (labels.empty() && row_labels) labels = row_names;
    if (!labels.empty() && row_labels && labels != row_names)
        throw ParseError("row labels do not match column labels", lines[first_data].first);
    try {
        return load_network(matrix, labels, opt.diagonal_relevant);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 0);
    }
}

/// "source,target,value" per line; value defaults to 1. Units are labelled by
/// the names used and numbered in order of first appearance.
inline ValuedNetwork read_edge_list(std::istream& in, bool diagonal_relevant = false) {
    std::vector<std::string> labels;
    std::map<std::string, std::size_t> index;
    struct Edge {
        std::size_t from, to;
        double value;
        std::size_t line;
    };
    std::vector<Edge> edges;
    auto unit = [&](const std::string& name) {
        auto [it, inserted] = index.try_emplace(name, labels.size());
        if (inserted) labels.push_back(name);
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line.front() == '#') continue;
        const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
        const auto fields = split(line, delim);
        if (fields.size() < 2 || fields.size() > 3)
            throw ParseError("expected 'source,target[,value]'", lineno);
        if (first && fields.size() == 3 && !parse_number(fields[2]) && !fields[2].empty()) {
            first = false;  // header line
            continue;
        }
        first = false;
        if (fields[0].empty() || fields[1].empty()) throw ParseError("empty unit name", lineno);
        double value = 1.0;
        if (fields.size() == 3 && !fields[2].empty()) {
            const auto v = parse_number(fields[2]);
            if (!v || !std::isfinite(*v)) throw ParseError("cannot parse value '" + fields[2] + "'", lineno);
            value = *v;
        }
        const std::size_t a = unit(fields[0]);
        const std::size_t b = unit(fields[1]);
        edges.push_back({a, b, value, lineno});
    }
    if (labels.empty()) throw ParseError("edge list contains no edges", 0);
    const std::size_t n = labels.size();
    std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<char>> seen(n, std::vector<char>(n, 0));
    for (const Edge& e : edges) {
        if (seen[e.from][e.to]) throw ParseError("duplicate edge", e.line);
        seen[e.from][e.to] = 1;
        matrix[e.from][e.to] = e.value;
    }
    return load_network(matrix, labels, diagonal_relevant);
}

/// Comma-separated with a corner-form header and row labels; zeros written as 0.
inline void write_dense(std::ostream& out, const ValuedNetwork& net) {
    for (const auto& l : net.labels()) out << ',' << l;
    out << '\n';
    for (std::size_t r = 0; r < net.size(); ++r) {
        out << net.label(r);
        for (std::size_t c = 0; c < net.size(); ++c) out << ',' << format_number(net(r, c));
        out << '\n';
    }
}

enum class InputFormat { dense, edges };

inline InputFormat parse_input_format(std::string_view s) {
    if (s == "dense") return InputFormat::dense;
    if (s == "edges") return InputFormat::edges;
    throw std::invalid_argument("unknown input format '" + std::string(s) + "'");
}

inline ValuedNetwork read_network_file(const std::string& path, InputFormat format,
                                       bool diagonal_relevant = false) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    try {
        if (format == InputFormat::edges) return read_edge_list(in, diagonal_relevant);
        return read_dense(in, {HeaderMode::detect, diagonal_relevant});
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

}  // namespace blockmodel::io
