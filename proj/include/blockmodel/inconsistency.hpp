#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "block_types.hpp"
#include "network.hpp"

namespace blockmodel {

inline double pos_part(double x) { return x > 0.0 ? x : 0.0; }
inline double neg_part(double x) { return x < 0.0 ? x : 0.0; }

/// Midpoint of the two central order statistics for even counts.
inline double median(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty vector");
    std::vector<double> v(values.begin(), values.end());
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

inline double mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean of an empty vector");
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

/// Sum of squared deviations from the mean, or from a pre-specified value.
inline double ss(std::span<const double> values, const CenterSpec& center = CenterSpec::fitted()) {
    if (values.empty()) throw std::invalid_argument("ss of an empty vector");
    const double c = center.is_fitted() ? mean(values) : *center.value;
    double s = 0.0;
    for (double v : values) s += (v - c) * (v - c);
    return s;
}

/// Sum of absolute deviations from the median, or from a pre-specified value.
inline double ad(std::span<const double> values, const CenterSpec& center = CenterSpec::fitted()) {
    if (values.empty()) throw std::invalid_argument("ad of an empty vector");
    const double c = center.is_fitted() ? median(values) : *center.value;
    double s = 0.0;
    for (double v : values) s += std::abs(v - c);
    return s;
}

enum class HomogeneityVariant { ss, ad };

/// Counts behind the binary formulas, taken over the counted cells of a block.
struct BinaryBlockStats {
    double s_t = 0;  // ones in the block
    double s_d = 0;  // ones on the diagonal
    double p_r = 0;  // non-null rows
    double p_c = 0;  // non-null columns
    double m_r = 0;  // maximal row sum
    double m_c = 0;  // maximal column sum
};

namespace detail {

inline std::vector<double> row_values(const BlockView& b, std::size_t a) {
    std::vector<double> out;
    out.reserve(b.n_cols());
    for (std::size_t c = 0; c < b.n_cols(); ++c)
        if (b.counted(a, c)) out.push_back(b(a, c));
    return out;
}

inline std::vector<double> col_values(const BlockView& b, std::size_t c) {
    std::vector<double> out;
    out.reserve(b.n_rows());
    for (std::size_t a = 0; a < b.n_rows(); ++a)
        if (b.counted(a, c)) out.push_back(b(a, c));
    return out;
}

inline std::vector<double> counted_values(const BlockView& b) {
    std::vector<double> out;
    out.reserve(b.counted_cells());
    for (std::size_t a = 0; a < b.n_rows(); ++a)
        for (std::size_t c = 0; c < b.n_cols(); ++c)
            if (b.counted(a, c)) out.push_back(b(a, c));
    return out;
}

inline std::vector<double> off_diagonal_values(const BlockView& b) {
    std::vector<double> out;
    for (std::size_t a = 0; a < b.n_rows(); ++a)
        for (std::size_t c = 0; c < b.n_cols(); ++c)
            if (a != c) out.push_back(b(a, c));
    return out;
}

inline std::vector<double> diagonal_values(const BlockView& b) {
    std::vector<double> out;
    for (std::size_t a = 0; a < std::min(b.n_rows(), b.n_cols()); ++a) out.push_back(b(a, a));
    return out;
}

/// Cells per row (column) that enter the sums.
inline double row_length(const BlockView& b) {
    return static_cast<double>(b.n_cols() - (b.ignores_diagonal() ? 1 : 0));
}
inline double col_length(const BlockView& b) {
    return static_cast<double>(b.n_rows() - (b.ignores_diagonal() ? 1 : 0));
}

/// Deviation measure that treats an empty vector as perfectly homogeneous.
inline double deviation(HomogeneityVariant variant, std::span<const double> values,
                        const CenterSpec& center) {
    if (values.empty()) return 0.0;
    return variant == HomogeneityVariant::ss ? ss(values, center) : ad(values, center);
}

}  // namespace detail

inline BinaryBlockStats binary_stats(const BlockView& b) {
    BinaryBlockStats st;
    std::vector<double> col_sums(b.n_cols(), 0.0);
    for (std::size_t a = 0; a < b.n_rows(); ++a) {
        double row_sum = 0.0;
        for (std::size_t c = 0; c < b.n_cols(); ++c) {
            if (!b.counted(a, c)) continue;
            const double v = b(a, c);
            row_sum += v;
            col_sums[c] += v;
            if (b.is_diagonal && a == c) st.s_d += v;
        }
        st.s_t += row_sum;
        if (row_sum > 0) st.p_r += 1;
        st.m_r = std::max(st.m_r, row_sum);
    }
    for (double s : col_sums) {
        if (s > 0) st.p_c += 1;
        st.m_c = std::max(st.m_c, s);
    }
    return st;
}

/// Number of errors of a {0,1} block against an ideal block.
inline double binary_block_inconsistency(const BlockView& b, BlockType type) {
    for (double v : b.values)
        if (v != 0.0 && v != 1.0)
            throw std::invalid_argument("binary inconsistency requires values in {0,1}");

    const BinaryBlockStats st = binary_stats(b);
    const double n_r = static_cast<double>(b.n_rows());
    const double n_c = static_cast<double>(b.n_cols());
    const double row_len = detail::row_length(b);
    const double col_len = detail::col_length(b);
    const bool variant = b.uses_diagonal_variant();

    switch (type) {
        case BlockType::null:
            return variant ? st.s_t + std::min(0.0, n_r - 2 * st.s_d) : st.s_t;
        case BlockType::com:
            return variant ? n_r * n_c - st.s_t + std::min(2 * st.s_d - n_r, 0.0)
                           : static_cast<double>(b.counted_cells()) - st.s_t;
        case BlockType::rdo:
            return variant ? (n_c - st.m_r - pos_part(1 - st.s_d)) * n_r : (row_len - st.m_r) * n_r;
        case BlockType::cdo:
            return variant ? (n_r - st.m_c - pos_part(1 - st.s_d)) * n_c : (col_len - st.m_c) * n_c;
        case BlockType::rre: return (n_r - st.p_r) * row_len;
        case BlockType::cre: return (n_c - st.p_c) * col_len;
        case BlockType::reg: {
            if (!b.ignores_diagonal()) return (n_c - st.p_c) * n_r + (n_r - st.p_r) * st.p_c;
            // Loops dropped: cells of null columns, plus cells of null rows that
            // sit in non-null columns.
            std::vector<bool> col_nonnull(b.n_cols(), false);
            for (std::size_t a = 0; a < b.n_rows(); ++a)
                for (std::size_t c = 0; c < b.n_cols(); ++c)
                    if (b.counted(a, c) && b(a, c) > 0) col_nonnull[c] = true;
            double extra = 0;
            for (std::size_t a = 0; a < b.n_rows(); ++a) {
                bool row_null = true;
                for (std::size_t c = 0; c < b.n_cols(); ++c)
                    if (b.counted(a, c) && b(a, c) > 0) row_null = false;
                if (!row_null) continue;
                for (std::size_t c = 0; c < b.n_cols(); ++c)
                    if (b.counted(a, c) && col_nonnull[c]) extra += 1;
            }
            return (n_c - st.p_c) * col_len + extra;
        }
        case BlockType::rfn: return st.s_t - st.p_r + (n_r - st.p_r) * row_len;
        case BlockType::cfn: return st.s_t - st.p_c + (n_c - st.p_c) * col_len;
    }
    return 0.0;
}

/// Deviation of a nonnegative block from the valued ideal block with threshold m.
inline double valued_block_inconsistency(const BlockView& b, BlockType type, double m,
                                         RowColFunction f) {
    if (!(m > 0.0)) throw std::invalid_argument("parameter m must be positive");
    for (double v : b.values)
        if (v < 0.0) throw std::invalid_argument("valued inconsistency requires nonnegative values");

    const std::size_t nr = b.n_rows();
    const std::size_t nc = b.n_cols();
    const bool variant = b.uses_diagonal_variant();

    double diag_sum = 0.0;
    double diag_deficit = 0.0;
    if (variant) {
        for (std::size_t a = 0; a < nr; ++a) {
            diag_sum += b(a, a);
            diag_deficit += pos_part(m - b(a, a));
        }
    }

    switch (type) {
        case BlockType::null: {
            double s = 0.0;
            for (std::size_t a = 0; a < nr; ++a)
                for (std::size_t c = 0; c < nc; ++c)
                    if (b.counted(a, c)) s += b(a, c);
            return variant ? s + std::min(0.0, diag_deficit - diag_sum) : s;
        }
        case BlockType::com: {
            double s = 0.0;
            for (std::size_t a = 0; a < nr; ++a)
                for (std::size_t c = 0; c < nc; ++c)
                    if (b.counted(a, c)) s += pos_part(m - b(a, c));
            return variant ? s + std::min(diag_sum - diag_deficit, 0.0) : s;
        }
        case BlockType::rdo: {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < nr; ++a) {
                double s = 0.0;
                for (std::size_t c = 0; c < nc; ++c)
                    if (b.counted(a, c)) s += pos_part(m - b(a, c));
                if (variant) s += neg_part(diag_sum - pos_part(m - b(a, a)));
                best = std::min(best, s);
            }
            return nr == 0 ? 0.0 : best * static_cast<double>(nr);
        }
        case BlockType::cdo: {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < nc; ++c) {
                double s = 0.0;
                for (std::size_t a = 0; a < nr; ++a)
                    if (b.counted(a, c)) s += pos_part(m - b(a, c));
                if (variant) s += neg_part(diag_sum - pos_part(m - b(c, c)));
                best = std::min(best, s);
            }
            return nc == 0 ? 0.0 : best * static_cast<double>(nc);
        }
        case BlockType::rre: {
            double s = 0.0;
            for (std::size_t a = 0; a < nr; ++a) {
                const auto row = detail::row_values(b, a);
                s += pos_part(m - evaluate_f(f, row)) * static_cast<double>(row.size());
            }
            return s;
        }
        case BlockType::cre: {
            double s = 0.0;
            for (std::size_t c = 0; c < nc; ++c) {
                const auto col = detail::col_values(b, c);
                s += pos_part(m - evaluate_f(f, col)) * static_cast<double>(col.size());
            }
            return s;
        }
        case BlockType::reg: {
            std::vector<double> row_def(nr), col_def(nc);
            for (std::size_t a = 0; a < nr; ++a) row_def[a] = pos_part(m - evaluate_f(f, detail::row_values(b, a)));
            for (std::size_t c = 0; c < nc; ++c) col_def[c] = pos_part(m - evaluate_f(f, detail::col_values(b, c)));
            double s = 0.0;
            for (std::size_t a = 0; a < nr; ++a)
                for (std::size_t c = 0; c < nc; ++c)
                    if (b.counted(a, c)) s += std::max(row_def[a], col_def[c]);
            return s;
        }
        case BlockType::rfn: {
            double s = 0.0;
            for (std::size_t a = 0; a < nr; ++a) {
                std::size_t arg = nc;
                std::size_t len = 0;
                for (std::size_t c = 0; c < nc; ++c) {
                    if (!b.counted(a, c)) continue;
                    ++len;
                    if (arg == nc || b(a, c) > b(a, arg)) arg = c;
                }
                if (arg == nc) continue;
                s += pos_part(m - b(a, arg)) * static_cast<double>(len);
                for (std::size_t c = 0; c < nc; ++c)
                    if (c != arg && b.counted(a, c)) s += b(a, c);
            }
            return s;
        }
        case BlockType::cfn: {
            double s = 0.0;
            for (std::size_t c = 0; c < nc; ++c) {
                std::size_t arg = nr;
                std::size_t len = 0;
                for (std::size_t a = 0; a < nr; ++a) {
                    if (!b.counted(a, c)) continue;
                    ++len;
                    if (arg == nr || b(a, c) > b(arg, c)) arg = a;
                }
                if (arg == nr) continue;
                s += pos_part(m - b(arg, c)) * static_cast<double>(len);
                for (std::size_t a = 0; a < nr; ++a)
                    if (a != arg && b.counted(a, c)) s += b(a, c);
            }
            return s;
        }
    }
    return 0.0;
}

/// Within-block variability against the homogeneity ideal block. `center`
/// replaces the fitted mean/median for com; null is com centred at 0.
inline double homogeneity_block_inconsistency(const BlockView& b, BlockType type,
                                              HomogeneityVariant variant, RowColFunction f,
                                              const CenterSpec& center = CenterSpec::fitted()) {
    switch (type) {
        case BlockType::null:
        case BlockType::com: {
            const CenterSpec c = type == BlockType::null ? CenterSpec::prespecified(0.0) : center;
            if (b.uses_diagonal_variant()) {
                return detail::deviation(variant, detail::off_diagonal_values(b), c) +
                       detail::deviation(variant, detail::diagonal_values(b), CenterSpec::fitted());
            }
            return detail::deviation(variant, detail::counted_values(b), c);
        }
        case BlockType::rre:
        case BlockType::cre:
        case BlockType::reg: {
            double row_term = 0.0;
            double col_term = 0.0;
            if (type != BlockType::cre) {
                std::vector<double> fvals;
                for (std::size_t a = 0; a < b.n_rows(); ++a) {
                    const auto row = detail::row_values(b, a);
                    if (!row.empty()) fvals.push_back(evaluate_f(f, row));
                }
                row_term = detail::deviation(variant, fvals, CenterSpec::fitted()) * detail::row_length(b);
            }
            if (type != BlockType::rre) {
                std::vector<double> fvals;
                for (std::size_t c = 0; c < b.n_cols(); ++c) {
                    const auto col = detail::col_values(b, c);
                    if (!col.empty()) fvals.push_back(evaluate_f(f, col));
                }
                col_term = detail::deviation(variant, fvals, CenterSpec::fitted()) * detail::col_length(b);
            }
            if (type == BlockType::rre) return row_term;
            if (type == BlockType::cre) return col_term;
            return std::max(row_term, col_term);
        }
        default:
            throw std::invalid_argument("block type '" + std::string(to_string(type)) +
                                        "' is not defined for homogeneity blockmodeling");
    }
}

/// Divides by the number of cells counted under the block's diagonal policy.
inline double normalize(double delta, const BlockView& b) {
    const std::size_t cells = b.counted_cells();
    return cells == 0 ? 0.0 : delta / static_cast<double>(cells);
}

}  // namespace blockmodel
