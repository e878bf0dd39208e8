#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace blockmodel {

/// Ideal block types. Enumerator order is the winner precedence used when
/// several types fit a block equally well.
enum class BlockType : std::uint8_t { null, com, rdo, cdo, rre, cre, reg, rfn, cfn };

inline constexpr std::array<BlockType, 9> kAllBlockTypes = {
    BlockType::null, BlockType::com, BlockType::rdo, BlockType::cdo, BlockType::rre,
    BlockType::cre,  BlockType::reg, BlockType::rfn, BlockType::cfn};

inline constexpr std::array<std::string_view, 9> kBlockTypeLabels = {
    "null", "com", "rdo", "cdo", "rre", "cre", "reg", "rfn", "cfn"};

inline std::string_view to_string(BlockType t) {
    return kBlockTypeLabels[static_cast<std::size_t>(t)];
}

inline BlockType parse_block_type(std::string_view s) {
    for (std::size_t i = 0; i < kBlockTypeLabels.size(); ++i)
        if (kBlockTypeLabels[i] == s) return kAllBlockTypes[i];
    throw std::invalid_argument("unknown block type '" + std::string(s) + "'");
}

/// Homogeneity criteria only define null, com, rre, cre and reg.
inline bool valid_for_homogeneity(BlockType t) {
    switch (t) {
        case BlockType::null:
        case BlockType::com:
        case BlockType::rre:
        case BlockType::cre:
        case BlockType::reg: return true;
        default: return false;
    }
}

/// Small set of block types, iterated in precedence order.
class BlockTypeSet {
public:
    constexpr BlockTypeSet() = default;
    BlockTypeSet(std::initializer_list<BlockType> types) {
        for (BlockType t : types) insert(t);
    }

    static BlockTypeSet all() {
        BlockTypeSet s;
        s.bits_ = 0x1FF;
        return s;
    }

    void insert(BlockType t) { bits_ |= bit(t); }
    bool contains(BlockType t) const { return (bits_ & bit(t)) != 0; }
    bool empty() const { return bits_ == 0; }
    std::size_t size() const {
        std::size_t n = 0;
        for (BlockType t : kAllBlockTypes) n += contains(t) ? 1 : 0;
        return n;
    }
    std::vector<BlockType> types() const {
        std::vector<BlockType> out;
        for (BlockType t : kAllBlockTypes)
            if (contains(t)) out.push_back(t);
        return out;
    }

    /// Labels joined by `sep`, e.g. "null|reg".
    std::string to_string(char sep = '|') const {
        std::string out;
        for (BlockType t : types()) {
            if (!out.empty()) out += sep;
            out += blockmodel::to_string(t);
        }
        return out;
    }

    friend bool operator==(BlockTypeSet, BlockTypeSet) = default;

private:
    static constexpr std::uint16_t bit(BlockType t) {
        return static_cast<std::uint16_t>(1u << static_cast<unsigned>(t));
    }
    std::uint16_t bits_ = 0;
};

/// Parses "null,reg" or "null|reg" (whitespace around labels allowed).
inline BlockTypeSet parse_block_type_set(std::string_view s) {
    BlockTypeSet out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find_first_of(",|", start);
        if (end == std::string_view::npos) end = s.size();
        std::string_view token = s.substr(start, end - start);
        while (!token.empty() && (token.front() == ' ' || token.front() == '\t'))
            token.remove_prefix(1);
        while (!token.empty() && (token.back() == ' ' || token.back() == '\t'))
            token.remove_suffix(1);
        if (token.empty()) throw std::invalid_argument("empty block type in '" + std::string(s) + "'");
        out.insert(parse_block_type(token));
        start = end + 1;
    }
    return out;
}

/// The function applied to rows and columns by f-regular blocks.
enum class RowColFunction { max, sum, mean };

inline std::string_view to_string(RowColFunction f) {
    switch (f) {
        case RowColFunction::max: return "max";
        case RowColFunction::sum: return "sum";
        case RowColFunction::mean: return "mean";
    }
    return "max";
}

inline RowColFunction parse_row_col_function(std::string_view s) {
    if (s == "max") return RowColFunction::max;
    if (s == "sum") return RowColFunction::sum;
    if (s == "mean") return RowColFunction::mean;
    throw std::invalid_argument("unknown row/column function '" + std::string(s) + "'");
}

/// True iff f(a) >= max(a) for every nonnegative vector a.
inline bool dominates_max(RowColFunction f) { return f != RowColFunction::mean; }

/// f over a vector; 0 for an empty vector.
inline double evaluate_f(RowColFunction f, std::span<const double> values) {
    if (values.empty()) return 0.0;
    switch (f) {
        case RowColFunction::max: return *std::max_element(values.begin(), values.end());
        case RowColFunction::sum: {
            double s = 0.0;
            for (double v : values) s += v;
            return s;
        }
        case RowColFunction::mean: {
            double s = 0.0;
            for (double v : values) s += v;
            return s / static_cast<double>(values.size());
        }
    }
    return 0.0;
}

/// Center from which homogeneity deviations are measured: the fitted mean or
/// median, or a value fixed in advance.
struct CenterSpec {
    std::optional<double> value;

    static CenterSpec fitted() { return {}; }
    static CenterSpec prespecified(double v) {
        if (!std::isfinite(v)) throw std::invalid_argument("pre-specified center must be finite");
        return {v};
    }
    bool is_fitted() const { return !value.has_value(); }
    friend bool operator==(const CenterSpec&, const CenterSpec&) = default;
};

}  // namespace blockmodel
