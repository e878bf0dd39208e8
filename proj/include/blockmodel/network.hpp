#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace blockmodel {

/// How the cells on the diagonal of a diagonal block enter inconsistencies.
///  - ignore: loops are dropped from every sum and every row/column function.
///  - table_variant: diagonal blocks use the separate diagonal treatment of the
///    ideal-block tables (null/com/rdo/cdo for binary and valued, null/com for
///    homogeneity).
///  - ordinary: diagonal blocks are scored exactly like off-diagonal ones.
enum class DiagonalPolicy { ignore, table_variant, ordinary };

inline std::string_view to_string(DiagonalPolicy p) {
    switch (p) {
        case DiagonalPolicy::ignore: return "ignore";
        case DiagonalPolicy::table_variant: return "variant";
        case DiagonalPolicy::ordinary: return "ordinary";
    }
    return "ignore";
}

inline DiagonalPolicy parse_diagonal_policy(std::string_view s) {
    if (s == "ignore") return DiagonalPolicy::ignore;
    if (s == "variant" || s == "table-variant") return DiagonalPolicy::table_variant;
    if (s == "ordinary") return DiagonalPolicy::ordinary;
    throw std::invalid_argument("unknown diagonal policy '" + std::string(s) + "'");
}

/// Square matrix of tie values with unit labels. Immutable after construction.
class ValuedNetwork {
public:
    ValuedNetwork() = default;

    std::size_t size() const noexcept { return values_.rows(); }
    double operator()(std::size_t from, std::size_t to) const { return values_(from, to); }
    const DenseMatrix<double>& values() const noexcept { return values_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t unit) const { return labels_.at(unit); }
    bool diagonal_relevant() const noexcept { return diagonal_relevant_; }

    bool is_binary() const {
        return std::all_of(values_.data().begin(), values_.data().end(),
                           [](double v) { return v == 0.0 || v == 1.0; });
    }
    bool is_nonnegative() const {
        return std::all_of(values_.data().begin(), values_.data().end(),
                           [](double v) { return v >= 0.0; });
    }
    double max_value() const {
        if (values_.empty()) return 0.0;
        return *std::max_element(values_.data().begin(), values_.data().end());
    }

    /// Same units and labels, new cell values. The matrix must match in size.
    ValuedNetwork with_values(DenseMatrix<double> values) const {
        if (values.rows() != size() || values.cols() != size())
            throw std::invalid_argument("replacement matrix does not match network size");
        ValuedNetwork out = *this;
        out.values_ = std::move(values);
        return out;
    }

    ValuedNetwork with_diagonal_relevant(bool relevant) const {
        ValuedNetwork out = *this;
        out.diagonal_relevant_ = relevant;
        return out;
    }

    friend ValuedNetwork load_network(const std::vector<std::vector<double>>& matrix,
                                      std::vector<std::string> labels, bool diagonal_relevant);
    friend bool operator==(const ValuedNetwork&, const ValuedNetwork&) = default;

private:
    DenseMatrix<double> values_;
    std::vector<std::string> labels_;
    bool diagonal_relevant_ = false;
};

/// Validates and stores a square matrix. Empty `labels` yields "1".."n".
inline ValuedNetwork load_network(const std::vector<std::vector<double>>& matrix,
                                  std::vector<std::string> labels = {},
                                  bool diagonal_relevant = false) {
    const std::size_t n = matrix.size();
    if (n == 0) throw std::invalid_argument("network must have at least one unit");
    for (std::size_t r = 0; r < n; ++r) {
        if (matrix[r].size() != n)
            throw std::invalid_argument("matrix is not square: row " + std::to_string(r + 1) +
                                        " has " + std::to_string(matrix[r].size()) +
                                        " columns, expected " + std::to_string(n));
    }
    if (labels.empty()) {
        labels.reserve(n);
        for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
    }
    if (labels.size() != n)
        throw std::invalid_argument("expected " + std::to_string(n) + " labels, got " +
                                    std::to_string(labels.size()));

    ValuedNetwork net;
    net.values_ = DenseMatrix<double>(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const double v = matrix[r][c];
            if (!std::isfinite(v))
                throw std::invalid_argument("non-finite value at (" + std::to_string(r + 1) + "," +
                                            std::to_string(c + 1) + ")");
            net.values_(r, c) = v;
        }
    }
    net.labels_ = std::move(labels);
    net.diagonal_relevant_ = diagonal_relevant;
    return net;
}

/// Binarizes: cells >= threshold become 1, all others 0.
inline ValuedNetwork slice(const ValuedNetwork& net, double threshold) {
    if (!(threshold > 0.0)) throw std::invalid_argument("slice threshold must be positive");
    DenseMatrix<double> out = net.values();
    for (double& v : out.data()) v = v >= threshold ? 1.0 : 0.0;
    return net.with_values(std::move(out));
}

/// Caps every cell above `ceiling` at `ceiling`.
inline ValuedNetwork censor(const ValuedNetwork& net, double ceiling) {
    if (!(ceiling > 0.0)) throw std::invalid_argument("censor ceiling must be positive");
    DenseMatrix<double> out = net.values();
    for (double& v : out.data()) v = std::min(v, ceiling);
    return net.with_values(std::move(out));
}

/// Assignment of units to k nonempty clusters, stored in canonical form:
/// clusters are numbered in order of their smallest member.
class Partition {
public:
    Partition() = default;

    /// Relabels arbitrary non-negative cluster ids into canonical form.
    static Partition canonical(const std::vector<int>& assignment) {
        Partition p;
        p.assignment_.resize(assignment.size());
        std::vector<std::pair<int, int>> seen;  // original id -> canonical id
        for (std::size_t u = 0; u < assignment.size(); ++u) {
            const int id = assignment[u];
            if (id < 0) throw std::invalid_argument("cluster ids must be non-negative");
            auto it = std::find_if(seen.begin(), seen.end(),
                                   [id](const auto& e) { return e.first == id; });
            if (it == seen.end()) {
                seen.emplace_back(id, static_cast<int>(seen.size()));
                p.assignment_[u] = static_cast<int>(seen.size()) - 1;
            } else {
                p.assignment_[u] = it->second;
            }
        }
        p.k_ = seen.size();
        return p;
    }

    /// Requires ids in 0..k-1 with every cluster nonempty; canonicalizes.
    static Partition from_assignment(const std::vector<int>& assignment, std::size_t k) {
        std::vector<std::size_t> counts(k, 0);
        for (int id : assignment) {
            if (id < 0 || static_cast<std::size_t>(id) >= k)
                throw std::invalid_argument("cluster index " + std::to_string(id) +
                                            " outside 0.." + std::to_string(k - 1));
            ++counts[static_cast<std::size_t>(id)];
        }
        for (std::size_t c = 0; c < k; ++c)
            if (counts[c] == 0)
                throw std::invalid_argument("cluster " + std::to_string(c) + " is empty");
        return canonical(assignment);
    }

    /// Builds a partition from explicit member lists (0-based unit indices).
    static Partition from_clusters(const std::vector<std::vector<std::size_t>>& clusters,
                                   std::size_t n) {
        std::vector<int> assignment(n, -1);
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            for (std::size_t u : clusters[c]) {
                if (u >= n) throw std::invalid_argument("unit index out of range");
                if (assignment[u] != -1) throw std::invalid_argument("unit assigned twice");
                assignment[u] = static_cast<int>(c);
            }
        }
        if (std::find(assignment.begin(), assignment.end(), -1) != assignment.end())
            throw std::invalid_argument("some units are not assigned to a cluster");
        return from_assignment(assignment, clusters.size());
    }

    std::size_t size() const noexcept { return assignment_.size(); }
    std::size_t k() const noexcept { return k_; }
    int cluster_of(std::size_t unit) const { return assignment_.at(unit); }
    const std::vector<int>& assignment() const noexcept { return assignment_; }

    std::vector<std::size_t> members(std::size_t cluster) const {
        std::vector<std::size_t> out;
        for (std::size_t u = 0; u < assignment_.size(); ++u)
            if (assignment_[u] == static_cast<int>(cluster)) out.push_back(u);
        return out;
    }

    std::vector<std::vector<std::size_t>> clusters() const {
        std::vector<std::vector<std::size_t>> out(k_);
        for (std::size_t u = 0; u < assignment_.size(); ++u)
            out[static_cast<std::size_t>(assignment_[u])].push_back(u);
        return out;
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition& a, const Partition& b) {
        return a.assignment_ <=> b.assignment_;
    }

private:
    std::vector<int> assignment_;
    std::size_t k_ = 0;
};

/// The sub-matrix of ties from cluster `row_cluster` to cluster `col_cluster`.
struct BlockView {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    std::vector<double> values;  // row-major, rows.size() x cols.size()
    bool is_diagonal = false;
    DiagonalPolicy diagonal_policy = DiagonalPolicy::ignore;
    std::size_t row_cluster = 0;
    std::size_t col_cluster = 0;

    std::size_t n_rows() const noexcept { return rows.size(); }
    std::size_t n_cols() const noexcept { return cols.size(); }
    double operator()(std::size_t a, std::size_t b) const { return values[a * cols.size() + b]; }

    bool ignores_diagonal() const noexcept {
        return is_diagonal && diagonal_policy == DiagonalPolicy::ignore;
    }
    bool uses_diagonal_variant() const noexcept {
        return is_diagonal && diagonal_policy == DiagonalPolicy::table_variant;
    }
    /// Whether cell (a, b) takes part in inconsistency sums.
    bool counted(std::size_t a, std::size_t b) const noexcept {
        return !(ignores_diagonal() && a == b);
    }
    std::size_t counted_cells() const noexcept {
        const std::size_t all = rows.size() * cols.size();
        return ignores_diagonal() ? all - rows.size() : all;
    }
};

/// Builds a block directly from member lists; the hot path for the searches.
inline BlockView make_block(const ValuedNetwork& net, const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols, bool is_diagonal,
                            DiagonalPolicy policy, std::size_t row_cluster = 0,
                            std::size_t col_cluster = 0) {
    BlockView b;
    b.rows = rows;
    b.cols = cols;
    b.values.resize(rows.size() * cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t c = 0; c < cols.size(); ++c)
            b.values[a * cols.size() + c] = net(rows[a], cols[c]);
    b.is_diagonal = is_diagonal;
    b.diagonal_policy = policy;
    b.row_cluster = row_cluster;
    b.col_cluster = col_cluster;
    return b;
}

inline BlockView extract_block(const ValuedNetwork& net, const Partition& partition, std::size_t i,
                               std::size_t j, DiagonalPolicy policy) {
    if (partition.size() != net.size())
        throw std::invalid_argument("partition size does not match network size");
    if (i >= partition.k() || j >= partition.k())
        throw std::out_of_range("cluster index out of range");
    return make_block(net, partition.members(i), partition.members(j), i == j, policy, i, j);
}

}  // namespace blockmodel
