#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "block_types.hpp"
#include "inconsistency.hpp"
#include "matrix.hpp"
#include "network.hpp"

namespace blockmodel {

/// Equal-width histogram over [lo, hi]; the last bin is closed.
struct Histogram {
    std::vector<double> edges;  // bins + 1 entries
    std::vector<std::size_t> counts;
};

inline Histogram make_histogram(const std::vector<double>& values, std::size_t bins = 10) {
    Histogram h;
    if (values.empty() || bins == 0) return h;
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    double lo = *lo_it;
    double hi = *hi_it;
    if (hi == lo) hi = lo + 1.0;
    const double width = (hi - lo) / static_cast<double>(bins);
    h.counts.assign(bins, 0);
    for (std::size_t b = 0; b <= bins; ++b) h.edges.push_back(lo + width * static_cast<double>(b));
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        h.counts[std::min(b, bins - 1)]++;
    }
    return h;
}

/// Per-block means of row and column f-values, plus the pooled distributions.
struct BlockSummaryTable {
    DenseMatrix<double> mean_row;
    DenseMatrix<double> mean_col;
    std::vector<double> row_values;  // f over every block row, all blocks
    std::vector<double> col_values;
    Histogram row_histogram;
    Histogram col_histogram;
};

/// Loops are left out of diagonal blocks unless the network marks them relevant.
inline BlockSummaryTable block_summaries(const ValuedNetwork& net, const Partition& partition,
                                         RowColFunction f) {
    if (partition.size() != net.size())
        throw std::invalid_argument("partition size does not match network size");
    const std::size_t k = partition.k();
    const auto clusters = partition.clusters();
    const DiagonalPolicy policy =
        net.diagonal_relevant() ? DiagonalPolicy::ordinary : DiagonalPolicy::ignore;

    BlockSummaryTable t;
    t.mean_row = DenseMatrix<double>(k, k, 0.0);
    t.mean_col = DenseMatrix<double>(k, k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const BlockView b = make_block(net, clusters[i], clusters[j], i == j, policy, i, j);
            double rs = 0.0;
            for (std::size_t a = 0; a < b.n_rows(); ++a) {
                const double v = evaluate_f(f, detail::row_values(b, a));
                rs += v;
                t.row_values.push_back(v);
            }
            double cs = 0.0;
            for (std::size_t c = 0; c < b.n_cols(); ++c) {
                const double v = evaluate_f(f, detail::col_values(b, c));
                cs += v;
                t.col_values.push_back(v);
            }
            t.mean_row(i, j) = rs / static_cast<double>(b.n_rows());
            t.mean_col(i, j) = cs / static_cast<double>(b.n_cols());
        }
    }
    t.row_histogram = make_histogram(t.row_values);
    t.col_histogram = make_histogram(t.col_values);
    return t;
}

/// Split of positive values into a low and a high group minimizing the
/// within-group sum of squares of log values.
struct TwoMeansSplit {
    std::vector<double> low;
    std::vector<double> high;
    double separation = 0.0;  // between-group share of the total log variance
};

inline std::optional<TwoMeansSplit> two_means_split(std::vector<double> values) {
    std::erase_if(values, [](double v) { return !(v > 0.0); });
    if (values.size() < 2) return std::nullopt;
    std::sort(values.begin(), values.end());
    if (values.front() == values.back()) return std::nullopt;
    std::vector<double> logs(values.size());
    std::transform(values.begin(), values.end(), logs.begin(), [](double v) { return std::log(v); });

    auto within = [](const std::vector<double>& x, std::size_t lo, std::size_t hi) {
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i) m += x[i];
        m /= static_cast<double>(hi - lo);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += (x[i] - m) * (x[i] - m);
        return s;
    };
    const double total = within(logs, 0, logs.size());
    std::size_t best_cut = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t cut = 1; cut < logs.size(); ++cut) {
        if (values[cut] == values[cut - 1]) continue;  // never split equal values
        const double w = within(logs, 0, cut) + within(logs, cut, logs.size());
        if (w < best) {
            best = w;
            best_cut = cut;
        }
    }
    TwoMeansSplit s;
    s.low.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(best_cut));
    s.high.assign(values.begin() + static_cast<std::ptrdiff_t>(best_cut), values.end());
    s.separation = total > 0.0 ? 1.0 - best / total : 0.0;
    return s;
}

/// Nearest value on the 1-2-5 ladder (..., 1, 2, 5, 10, 20, ...), in log distance.
inline double round_to_125(double x) {
    if (!(x > 0.0)) return 0.0;
    const double decade = std::pow(10.0, std::floor(std::log10(x)));
    double best = decade;
    for (double step : {1.0, 2.0, 5.0, 10.0}) {
        const double c = step * decade;
        if (std::abs(std::log(c / x)) < std::abs(std::log(best / x))) best = c;
    }
    return best;
}

struct MSuggestion {
    std::string basis;                 // which distribution was examined
    std::vector<double> distribution;  // values examined (zeros removed)
    Histogram histogram;
    bool bimodal = false;
    double separation = 0.0;
    std::optional<std::pair<double, double>> gap;  // between the two modes
    std::pair<double, double> range{0.0, 0.0};      // suggested m interval
    std::vector<double> candidates;                // rounded values to try
    std::optional<std::pair<double, double>> slice_interval;  // [t, 2t]
};

/// Separation above which the log-scale two-means split is read as bimodal.
inline constexpr double kBimodalSeparation = 0.5;

/// Examines the distribution relevant for choosing m. With a partition and a
/// regular model, the per-block mean row/column f-values are examined (the
/// block summaries of a previous solution); without a partition, row and
/// column f-values over the whole network; for non-regular models, cell values.
inline MSuggestion suggest_m(const ValuedNetwork& net, const std::optional<Partition>& partition,
                             RowColFunction f, bool blocks_regular,
                             std::optional<double> slice_threshold = std::nullopt) {
    MSuggestion s;
    std::vector<double> values;
    if (!blocks_regular) {
        s.basis = "cell values";
        for (std::size_t r = 0; r < net.size(); ++r)
            for (std::size_t c = 0; c < net.size(); ++c)
                if (r != c || net.diagonal_relevant()) values.push_back(net(r, c));
    } else if (partition) {
        s.basis = std::string("block means of row/column ") + std::string(to_string(f)) + " values";
        const BlockSummaryTable t = block_summaries(net, *partition, f);
        values = t.mean_row.data();
        values.insert(values.end(), t.mean_col.data().begin(), t.mean_col.data().end());
    } else {
        s.basis = std::string("row/column ") + std::string(to_string(f)) + " values";
        const Partition whole = Partition::canonical(std::vector<int>(net.size(), 0));
        const BlockSummaryTable t = block_summaries(net, whole, f);
        values = t.row_values;
        values.insert(values.end(), t.col_values.begin(), t.col_values.end());
    }
    std::erase_if(values, [](double v) { return v == 0.0; });
    std::sort(values.begin(), values.end());
    s.distribution = values;
    s.histogram = make_histogram(values);

    if (const auto split = two_means_split(values); split && split->separation >= kBimodalSeparation) {
        s.bimodal = true;
        s.separation = split->separation;
        s.gap = std::make_pair(split->low.back(), split->high.front());
        s.range = {round_to_125(s.gap->first), round_to_125(s.gap->second)};
        if (s.range.first > s.range.second) std::swap(s.range.first, s.range.second);
    } else if (!values.empty()) {
        if (split) s.separation = split->separation;
        // Unimodal: centre of the fullest histogram bin.
        const auto& h = s.histogram;
        const auto top = static_cast<std::size_t>(
            std::max_element(h.counts.begin(), h.counts.end()) - h.counts.begin());
        const double mode = 0.5 * (h.edges[top] + h.edges[top + 1]);
        s.range = {h.edges[top], h.edges[top + 1]};
        s.candidates.push_back(round_to_125(mode));
    }
    if (s.bimodal) {
        s.candidates.push_back(s.range.first);
        if (s.range.second != s.range.first) s.candidates.push_back(s.range.second);
    }
    if (slice_threshold) {
        if (!(*slice_threshold > 0.0)) throw std::invalid_argument("slice threshold must be positive");
        s.slice_interval = std::make_pair(*slice_threshold, 2.0 * *slice_threshold);
    }
    return s;
}

}  // namespace blockmodel
