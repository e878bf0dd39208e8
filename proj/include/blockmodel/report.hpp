#pragma once

#include <algorithm>
#include <cstddef>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "criterion.hpp"
#include "io.hpp"
#include "search.hpp"
#include "summary.hpp"

namespace blockmodel::report {

using json = nlohmann::json;

/// "label,cluster" with 1-based clusters.
inline std::string partition_csv(const ValuedNetwork& net, const Partition& p) {
    std::ostringstream out;
    out << "label,cluster\n";
    for (std::size_t u = 0; u < p.size(); ++u) out << net.label(u) << ',' << p.cluster_of(u) + 1 << '\n';
    return out.str();
}

template <typename T, typename Fmt>
std::string matrix_csv(const DenseMatrix<T>& m, Fmt fmt) {
    std::ostringstream out;
    for (std::size_t j = 0; j < m.cols(); ++j) out << ',' << j + 1;
    out << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << i + 1;
        for (std::size_t j = 0; j < m.cols(); ++j) out << ',' << fmt(m(i, j));
        out << '\n';
    }
    return out.str();
}

inline std::string image_csv(const DenseMatrix<BlockType>& image) {
    return matrix_csv(image, [](BlockType t) { return std::string(to_string(t)); });
}

inline std::string inconsistency_csv(const DenseMatrix<double>& m) {
    return matrix_csv(m, [](double v) { return io::format_number(v); });
}

/// Matrix with rows and columns grouped by cluster; zero cells left blank and
/// clusters separated by rules.
inline std::string render_reordered(const ValuedNetwork& net, const Partition& p) {
    std::vector<std::size_t> order;
    std::vector<std::size_t> boundaries;  // index in `order` where a new cluster starts
    for (const auto& members : p.clusters()) {
        boundaries.push_back(order.size());
        order.insert(order.end(), members.begin(), members.end());
    }
    std::size_t width = 1;
    for (const auto& l : net.labels()) width = std::max(width, l.size());
    for (double v : net.values().data()) width = std::max(width, io::format_number(v).size());
    auto is_boundary = [&](std::size_t idx) {
        return idx > 0 && std::find(boundaries.begin(), boundaries.end(), idx) != boundaries.end();
    };

    std::ostringstream out;
    std::ostringstream header;
    header << std::setw(static_cast<int>(width)) << "" << " |";
    for (std::size_t c = 0; c < order.size(); ++c) {
        if (is_boundary(c)) header << " |";
        header << ' ' << std::setw(static_cast<int>(width)) << net.label(order[c]);
    }
    const std::string head = header.str();
    const std::string rule(head.size(), '-');
    out << head << '\n' << rule << '\n';
    for (std::size_t r = 0; r < order.size(); ++r) {
        if (is_boundary(r)) out << rule << '\n';
        out << std::setw(static_cast<int>(width)) << net.label(order[r]) << " |";
        for (std::size_t c = 0; c < order.size(); ++c) {
            if (is_boundary(c)) out << " |";
            const double v = net(order[r], order[c]);
            out << ' ' << std::setw(static_cast<int>(width)) << (v == 0.0 ? std::string() : io::format_number(v));
        }
        out << '\n';
    }
    return out.str();
}

template <typename T, typename Fmt>
json matrix_json(const DenseMatrix<T>& m, Fmt fmt) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(fmt(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json fit_json(const ValuedNetwork& net, const FitResult& fit) {
    json j;
    json partition = json::object();
    for (std::size_t u = 0; u < fit.partition.size(); ++u) partition[net.label(u)] = fit.partition.cluster_of(u);
    j["partition"] = partition;
    j["assignment"] = fit.partition.assignment();
    j["k"] = fit.partition.k();
    j["total"] = fit.total;
    j["image"] = matrix_json(fit.image, [](BlockType t) { return std::string(to_string(t)); });
    j["block_inconsistencies"] = matrix_json(fit.block_inconsistencies, [](double v) { return v; });
    j["ties"] = matrix_json(fit.ties, [](BlockTypeSet s) { return s.to_string('|'); });
    return j;
}

inline json search_json(const ValuedNetwork& net, const SearchResult& r) {
    json j;
    j["best"] = fit_json(net, r.best);
    j["optima_count"] = r.optima.size();
    json optima = json::array();
    for (const auto& p : r.optima) optima.push_back(p.assignment());
    j["optima"] = optima;
    j["evaluations"] = r.evaluations;
    j["restarts_reaching_best"] = r.restarts_reaching_best;
    const MultistartSummary s = multistart_report(r);
    j["distinct_local_optima"] = s.distinct_local_optima;
    j["basin_sizes"] = s.basin_sizes;
    return j;
}

inline json histogram_json(const Histogram& h) {
    return json{{"edges", h.edges}, {"counts", h.counts}};
}

inline json suggestion_json(const MSuggestion& s) {
    json j;
    j["basis"] = s.basis;
    j["distribution"] = s.distribution;
    j["histogram"] = histogram_json(s.histogram);
    j["bimodal"] = s.bimodal;
    j["separation"] = s.separation;
    if (s.gap) j["gap"] = {s.gap->first, s.gap->second};
    j["range"] = {s.range.first, s.range.second};
    j["candidates"] = s.candidates;
    if (s.slice_interval) j["slice_interval"] = {s.slice_interval->first, s.slice_interval->second};
    return j;
}

inline json summary_table_json(const BlockSummaryTable& t) {
    auto num = [](double v) { return v; };
    return json{{"mean_row", matrix_json(t.mean_row, num)},
                {"mean_col", matrix_json(t.mean_col, num)},
                {"row_histogram", histogram_json(t.row_histogram)},
                {"col_histogram", histogram_json(t.col_histogram)}};
}

/// Histogram as "lower,upper,count" rows.
inline std::string histogram_csv(const Histogram& h) {
    std::ostringstream out;
    out << "lower,upper,count\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b)
        out << io::format_number(h.edges[b]) << ',' << io::format_number(h.edges[b + 1]) << ','
            << h.counts[b] << '\n';
    return out.str();
}

}  // namespace blockmodel::report
