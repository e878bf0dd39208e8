#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "block_types.hpp"
#include "inconsistency.hpp"
#include "matrix.hpp"
#include "network.hpp"

namespace blockmodel {

/// Criterion family. `m` is only meaningful for the valued approach.
struct Approach {
    enum class Kind { binary, valued, hom_ss, hom_ad };
    Kind kind = Kind::hom_ss;
    double m = 0.0;

    static Approach binary() { return {Kind::binary, 0.0}; }
    static Approach valued(double m) { return {Kind::valued, m}; }
    static Approach hom_ss() { return {Kind::hom_ss, 0.0}; }
    static Approach hom_ad() { return {Kind::hom_ad, 0.0}; }

    bool is_homogeneity() const { return kind == Kind::hom_ss || kind == Kind::hom_ad; }
    friend bool operator==(const Approach&, const Approach&) = default;
};

inline std::string_view to_string(Approach::Kind k) {
    switch (k) {
        case Approach::Kind::binary: return "binary";
        case Approach::Kind::valued: return "valued";
        case Approach::Kind::hom_ss: return "ss";
        case Approach::Kind::hom_ad: return "ad";
    }
    return "ss";
}

inline Approach::Kind parse_approach_kind(std::string_view s) {
    if (s == "binary") return Approach::Kind::binary;
    if (s == "valued") return Approach::Kind::valued;
    if (s == "ss" || s == "hom_ss") return Approach::Kind::hom_ss;
    if (s == "ad" || s == "hom_ad") return Approach::Kind::hom_ad;
    throw std::invalid_argument("unknown approach '" + std::string(s) + "'");
}

/// Allowed ideal blocks: one set for every position, or a k x k pre-specified
/// model.
class AllowedBlocks {
public:
    AllowedBlocks() : global_(BlockTypeSet{BlockType::null, BlockType::reg}) {}
    AllowedBlocks(BlockTypeSet global) : global_(global) {}  // NOLINT: implicit on purpose
    AllowedBlocks(std::initializer_list<BlockType> global) : global_(BlockTypeSet(global)) {}
    explicit AllowedBlocks(DenseMatrix<BlockTypeSet> per_position)
        : per_position_(std::move(per_position)) {
        if (per_position_->rows() != per_position_->cols())
            throw std::invalid_argument("pre-specified model must be square");
    }

    bool is_prespecified() const { return per_position_.has_value(); }
    std::size_t prespecified_k() const { return per_position_ ? per_position_->rows() : 0; }

    BlockTypeSet at(std::size_t i, std::size_t j) const {
        return per_position_ ? per_position_->at(i, j) : global_;
    }

    /// Every set involved, for validation.
    std::vector<BlockTypeSet> sets() const {
        if (!per_position_) return {global_};
        return per_position_->data();
    }

private:
    BlockTypeSet global_;
    std::optional<DenseMatrix<BlockTypeSet>> per_position_;
};

struct ModelSpec {
    Approach approach = Approach::hom_ss();
    AllowedBlocks allowed;
    RowColFunction f = RowColFunction::max;
    /// Pre-specified centers for homogeneity com blocks, k x k.
    std::optional<DenseMatrix<CenterSpec>> centers;
    bool normalize = false;
    /// Effective only when the network marks the diagonal as relevant;
    /// otherwise loops are ignored.
    DiagonalPolicy diagonal_policy = DiagonalPolicy::table_variant;
};

/// Throws on an inconsistent specification; returns non-fatal warnings.
inline std::vector<std::string> validate(const ModelSpec& spec) {
    std::vector<std::string> warnings;
    if (spec.approach.kind == Approach::Kind::valued) {
        if (!(spec.approach.m > 0.0) || !std::isfinite(spec.approach.m))
            throw std::invalid_argument("valued approach requires a positive, finite m");
    }
    bool uses_f = false;
    for (BlockTypeSet s : spec.allowed.sets()) {
        if (s.empty()) throw std::invalid_argument("allowed block set is empty");
        for (BlockType t : s.types()) {
            if (spec.approach.is_homogeneity() && !valid_for_homogeneity(t))
                throw std::invalid_argument("block type '" + std::string(to_string(t)) +
                                            "' is not available for homogeneity blockmodeling");
            if (t == BlockType::rre || t == BlockType::cre || t == BlockType::reg) uses_f = true;
        }
    }
    if (spec.centers) {
        if (!spec.approach.is_homogeneity())
            throw std::invalid_argument("pre-specified centers require a homogeneity approach");
        if (spec.centers->rows() != spec.centers->cols())
            throw std::invalid_argument("center matrix must be square");
    }
    if (spec.allowed.is_prespecified() && spec.centers &&
        spec.centers->rows() != spec.allowed.prespecified_k())
        throw std::invalid_argument("center matrix and pre-specified model differ in size");
    if (spec.approach.kind == Approach::Kind::valued && uses_f && !dominates_max(spec.f))
        warnings.emplace_back(
            "f=mean does not dominate max: f-regular blocks are no longer compatible with "
            "complete blocks and binary blockmodeling is no longer a special case");
    return warnings;
}

/// Inconsistency of one block with one ideal block under the model's approach,
/// before normalization.
inline double block_inconsistency(const BlockView& block, BlockType type, const ModelSpec& spec,
                                  const CenterSpec& center = CenterSpec::fitted()) {
    switch (spec.approach.kind) {
        case Approach::Kind::binary: return binary_block_inconsistency(block, type);
        case Approach::Kind::valued:
            return valued_block_inconsistency(block, type, spec.approach.m, spec.f);
        case Approach::Kind::hom_ss:
            return homogeneity_block_inconsistency(block, type, HomogeneityVariant::ss, spec.f, center);
        case Approach::Kind::hom_ad:
            return homogeneity_block_inconsistency(block, type, HomogeneityVariant::ad, spec.f, center);
    }
    return 0.0;
}

struct BlockFit {
    double inconsistency = 0.0;
    BlockType winner = BlockType::null;
    BlockTypeSet ties;
};

/// Minimum over the allowed ideal blocks; ties resolved by precedence.
inline BlockFit block_fit(const BlockView& block, BlockTypeSet allowed, const ModelSpec& spec) {
    if (allowed.empty()) throw std::invalid_argument("allowed block set is empty");
    CenterSpec center = CenterSpec::fitted();
    if (spec.centers && block.row_cluster < spec.centers->rows() &&
        block.col_cluster < spec.centers->cols())
        center = (*spec.centers)(block.row_cluster, block.col_cluster);

    BlockFit fit;
    bool first = true;
    for (BlockType t : allowed.types()) {
        double delta = block_inconsistency(block, t, spec, center);
        if (spec.normalize) delta = normalize(delta, block);
        if (first || delta < fit.inconsistency) {
            fit.inconsistency = delta;
            fit.winner = t;
            fit.ties = BlockTypeSet{t};
            first = false;
        } else if (delta == fit.inconsistency) {
            fit.ties.insert(t);
        }
    }
    return fit;
}

struct FitResult {
    Partition partition;
    double total = 0.0;
    DenseMatrix<BlockType> image;
    DenseMatrix<double> block_inconsistencies;
    DenseMatrix<BlockTypeSet> ties;
};

/// Diagonal policy actually applied to a network under a model.
inline DiagonalPolicy effective_policy(const ValuedNetwork& net, const ModelSpec& spec) {
    return net.diagonal_relevant() ? spec.diagonal_policy : DiagonalPolicy::ignore;
}

/// Checks the network against the value domain of the approach.
inline void check_network_for(const ValuedNetwork& net, const Approach& approach) {
    if (approach.kind == Approach::Kind::binary && !net.is_binary())
        throw std::invalid_argument("binary blockmodeling requires a {0,1} network (slice it first)");
    if (approach.kind == Approach::Kind::valued && !net.is_nonnegative())
        throw std::invalid_argument("valued blockmodeling cannot handle negative tie values");
}

inline void check_dimensions(const ValuedNetwork& net, const Partition& partition,
                             const ModelSpec& spec) {
    if (partition.size() != net.size())
        throw std::invalid_argument("partition covers " + std::to_string(partition.size()) +
                                    " units, network has " + std::to_string(net.size()));
    if (spec.allowed.is_prespecified() && spec.allowed.prespecified_k() != partition.k())
        throw std::invalid_argument("pre-specified model is " +
                                    std::to_string(spec.allowed.prespecified_k()) + "x" +
                                    std::to_string(spec.allowed.prespecified_k()) + " but k = " +
                                    std::to_string(partition.k()));
    if (spec.centers && spec.centers->rows() != partition.k())
        throw std::invalid_argument("center matrix does not match k");
}

/// Evaluates all k^2 blocks of a partition. Summation is in row-major block
/// order, so totals are reproducible bit for bit.
inline FitResult total_inconsistency(const ValuedNetwork& net, const Partition& partition,
                                     const ModelSpec& spec) {
    check_dimensions(net, partition, spec);
    check_network_for(net, spec.approach);
    const std::size_t k = partition.k();
    const DiagonalPolicy policy = effective_policy(net, spec);
    const auto clusters = partition.clusters();

    FitResult out;
    out.partition = partition;
    out.image = DenseMatrix<BlockType>(k, k, BlockType::null);
    out.block_inconsistencies = DenseMatrix<double>(k, k, 0.0);
    out.ties = DenseMatrix<BlockTypeSet>(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const BlockView block = make_block(net, clusters[i], clusters[j], i == j, policy, i, j);
            const BlockFit fit = block_fit(block, spec.allowed.at(i, j), spec);
            out.image(i, j) = fit.winner;
            out.block_inconsistencies(i, j) = fit.inconsistency;
            out.ties(i, j) = fit.ties;
        }
    }
    double total = 0.0;
    for (double d : out.block_inconsistencies.data()) total += d;
    out.total = total;
    return out;
}

namespace detail {
inline bool close(double a, double b, double eps) { return a == b || std::abs(a - b) <= eps; }
}  // namespace detail

/// Structural equivalence of units a and b. Loops (condition r_aa = r_bb) are
/// only compared when the network marks the diagonal as relevant.
inline bool check_structural_equivalence(const ValuedNetwork& net, std::size_t a, std::size_t b,
                                         double epsilon = 0.0) {
    const std::size_t n = net.size();
    if (a >= n || b >= n) throw std::out_of_range("unit index out of range");
    if (a == b) throw std::invalid_argument("structural equivalence query needs two distinct units");
    for (std::size_t i = 0; i < n; ++i) {
        if (i == a || i == b) continue;
        if (!detail::close(net(b, i), net(a, i), epsilon)) return false;
        if (!detail::close(net(i, b), net(i, a), epsilon)) return false;
    }
    if (net.diagonal_relevant() && !detail::close(net(b, b), net(a, a), epsilon)) return false;
    return detail::close(net(a, b), net(b, a), epsilon);
}

/// True iff every pair of co-clustered units is structurally equivalent.
inline bool induces_structural_equivalence(const ValuedNetwork& net, const Partition& partition,
                                           double epsilon = 0.0) {
    for (const auto& members : partition.clusters())
        for (std::size_t x = 0; x + 1 < members.size(); ++x)
            for (std::size_t y = x + 1; y < members.size(); ++y)
                if (!check_structural_equivalence(net, members[x], members[y], epsilon))
                    return false;
    return true;
}

/// f-regular equivalence: co-clustered units have equal f over their ties to
/// (and from) every cluster. Loops are excluded unless the diagonal is relevant.
inline bool check_f_regular_equivalence(const ValuedNetwork& net, const Partition& partition,
                                        RowColFunction f, double epsilon = 0.0) {
    if (partition.size() != net.size())
        throw std::invalid_argument("partition size does not match network size");
    const auto clusters = partition.clusters();
    const bool loops = net.diagonal_relevant();

    auto summary = [&](std::size_t unit, const std::vector<std::size_t>& target, bool outgoing) {
        std::vector<double> v;
        for (std::size_t t : target) {
            if (t == unit && !loops) continue;
            v.push_back(outgoing ? net(unit, t) : net(t, unit));
        }
        return evaluate_f(f, v);
    };

    for (const auto& members : clusters) {
        if (members.size() < 2) continue;
        for (const auto& target : clusters) {
            const double out0 = summary(members[0], target, true);
            const double in0 = summary(members[0], target, false);
            for (std::size_t x = 1; x < members.size(); ++x) {
                if (!detail::close(summary(members[x], target, true), out0, epsilon)) return false;
                if (!detail::close(summary(members[x], target, false), in0, epsilon)) return false;
            }
        }
    }
    return true;
}

}  // namespace blockmodel
