#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "criterion.hpp"
#include "network.hpp"

namespace blockmodel {

enum class Neighborhood { moves, moves_and_swaps };

struct SearchConfig {
    std::size_t k = 3;
    std::size_t restarts = 100;
    std::uint64_t seed = 1;
    Neighborhood neighborhood = Neighborhood::moves_and_swaps;
    std::size_t max_iterations = 10000;
    bool collect_all_optima = true;
    /// Totals within optimum_epsilon * max(1, |best|) of the best count as ties.
    double optimum_epsilon = 1e-9;
    /// Worker threads for independent restarts; results do not depend on it.
    std::size_t threads = 1;
};

/// Distinct end point of one or more descents.
struct Basin {
    Partition partition;
    double total = 0.0;
    std::size_t restarts = 0;
};

struct SearchResult {
    FitResult best;
    std::vector<Partition> optima;  // sorted, canonical, pairwise distinct
    std::size_t restarts_reaching_best = 0;
    std::size_t evaluations = 0;
    std::vector<Basin> basins;  // sorted by (total, partition)
};

/// Stirling number of the second kind, saturating at UINT64_MAX.
inline std::uint64_t stirling2(std::size_t n, std::size_t k) {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    if (k > n) return 0;
    std::vector<std::uint64_t> row(k + 1, 0);
    row[0] = 1;  // S(0,0)
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = std::min(i, k); j >= 1; --j) {
            const std::uint64_t a = row[j];
            const std::uint64_t b = row[j - 1];
            std::uint64_t prod = 0;
            if (a != 0 && j > kMax / a) prod = kMax;
            else prod = a * j;
            row[j] = (prod > kMax - b) ? kMax : prod + b;
        }
        row[0] = 0;
    }
    return row[k];
}

namespace detail {

inline double tie_tolerance(double best, double epsilon) {
    return epsilon * std::max(1.0, std::abs(best));
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Local-search state with cached per-block inconsistencies. Only blocks in
/// the rows and columns of the touched clusters are recomputed per candidate.
class DescentState {
public:
    DescentState(const ValuedNetwork& net, const ModelSpec& spec, std::vector<int> assignment,
                 std::size_t k)
        : net_(net), spec_(spec), k_(k), policy_(effective_policy(net, spec)),
          assign_(std::move(assignment)), members_(k), delta_(k, k, 0.0) {
        for (std::size_t u = 0; u < assign_.size(); ++u)
            members_[static_cast<std::size_t>(assign_[u])].push_back(u);
        for (std::size_t i = 0; i < k_; ++i)
            for (std::size_t j = 0; j < k_; ++j) delta_(i, j) = eval(members_, i, j);
        total_ = sum(delta_);
    }

    double total() const { return total_; }
    const std::vector<int>& assignment() const { return assign_; }
    const std::vector<std::vector<std::size_t>>& members() const { return members_; }

    /// Total after reassigning the given units; returns the recomputed blocks.
    double candidate(const std::vector<std::pair<std::size_t, int>>& changes,
                     DenseMatrix<double>& scratch) const {
        auto members = members_;
        std::vector<char> touched(k_, 0);
        for (auto [unit, to] : changes) {
            const auto from = static_cast<std::size_t>(assign_[unit]);
            auto& src = members[from];
            src.erase(std::find(src.begin(), src.end(), unit));
            auto& dst = members[static_cast<std::size_t>(to)];
            dst.insert(std::upper_bound(dst.begin(), dst.end(), unit), unit);
            touched[from] = 1;
            touched[static_cast<std::size_t>(to)] = 1;
        }
        scratch = delta_;
        for (std::size_t i = 0; i < k_; ++i)
            for (std::size_t j = 0; j < k_; ++j)
                if (touched[i] || touched[j]) scratch(i, j) = eval(members, i, j);
        return sum(scratch);
    }

    void apply(const std::vector<std::pair<std::size_t, int>>& changes, DenseMatrix<double> delta,
               double total) {
        for (auto [unit, to] : changes) {
            auto& src = members_[static_cast<std::size_t>(assign_[unit])];
            src.erase(std::find(src.begin(), src.end(), unit));
            auto& dst = members_[static_cast<std::size_t>(to)];
            dst.insert(std::upper_bound(dst.begin(), dst.end(), unit), unit);
            assign_[unit] = to;
        }
        delta_ = std::move(delta);
        total_ = total;
    }

private:
    double eval(const std::vector<std::vector<std::size_t>>& members, std::size_t i,
                std::size_t j) const {
        const BlockView b = make_block(net_, members[i], members[j], i == j, policy_, i, j);
        return block_fit(b, spec_.allowed.at(i, j), spec_).inconsistency;
    }
    static double sum(const DenseMatrix<double>& m) {
        double s = 0.0;
        for (double d : m.data()) s += d;
        return s;
    }

    const ValuedNetwork& net_;
    const ModelSpec& spec_;
    std::size_t k_;
    DiagonalPolicy policy_;
    std::vector<int> assign_;
    std::vector<std::vector<std::size_t>> members_;
    DenseMatrix<double> delta_;
    double total_ = 0.0;
};

struct DescentOutcome {
    Partition partition;
    double total = 0.0;
    std::size_t evaluations = 0;
};

/// Steepest descent from one start: take the best strictly improving move or
/// swap until none exists.
inline DescentOutcome descend(const ValuedNetwork& net, const ModelSpec& spec,
                              const SearchConfig& config, std::vector<int> start) {
    const std::size_t k = config.k;
    const std::size_t n = net.size();
    DescentState state(net, spec, std::move(start), k);
    DescentOutcome out;
    out.evaluations = 1;

    DenseMatrix<double> scratch;
    DenseMatrix<double> best_delta;
    std::vector<std::pair<std::size_t, int>> change;
    for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
        double best_total = state.total();
        std::vector<std::pair<std::size_t, int>> best_change;
        auto consider = [&](const std::vector<std::pair<std::size_t, int>>& c) {
            const double t = state.candidate(c, scratch);
            ++out.evaluations;
            if (t < best_total) {
                best_total = t;
                best_change = c;
                best_delta = scratch;
            }
        };
        for (std::size_t u = 0; u < n; ++u) {
            const int from = state.assignment()[u];
            if (state.members()[static_cast<std::size_t>(from)].size() == 1) continue;
            for (std::size_t to = 0; to < k; ++to) {
                if (static_cast<int>(to) == from) continue;
                change.assign({{u, static_cast<int>(to)}});
                consider(change);
            }
        }
        if (config.neighborhood == Neighborhood::moves_and_swaps) {
            for (std::size_t u = 0; u < n; ++u) {
                for (std::size_t v = u + 1; v < n; ++v) {
                    const int cu = state.assignment()[u];
                    const int cv = state.assignment()[v];
                    if (cu == cv) continue;
                    change.assign({{u, cv}, {v, cu}});
                    consider(change);
                }
            }
        }
        if (best_change.empty()) break;
        state.apply(best_change, best_delta, best_total);
    }
    out.partition = Partition::canonical(state.assignment());
    out.total = state.total();
    return out;
}

/// Random start with every cluster nonempty: shuffle the units, deal the first
/// k one per cluster, place the rest uniformly.
inline std::vector<int> random_start(std::size_t n, std::size_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> assignment(n, 0);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(k) - 1);
    for (std::size_t i = 0; i < n; ++i)
        assignment[order[i]] = i < k ? static_cast<int>(i) : pick(rng);
    return assignment;
}

inline void validate_search(const ValuedNetwork& net, const ModelSpec& spec, std::size_t k) {
    if (k == 0) throw std::invalid_argument("k must be at least 1");
    if (k > net.size())
        throw std::invalid_argument("k = " + std::to_string(k) + " exceeds the number of units (" +
                                    std::to_string(net.size()) + ")");
    if (spec.allowed.is_prespecified() && spec.allowed.prespecified_k() != k)
        throw std::invalid_argument("pre-specified model size does not match k");
    validate(spec);
    check_network_for(net, spec.approach);
}

}  // namespace detail

/// Multi-start steepest descent. Output depends only on (net, spec, config
/// minus threads, start).
inline SearchResult local_search(const ValuedNetwork& net, const ModelSpec& spec,
                                 const SearchConfig& config,
                                 const std::optional<Partition>& start = std::nullopt) {
    detail::validate_search(net, spec, config.k);
    if (config.restarts == 0) throw std::invalid_argument("restarts must be at least 1");
    if (start) {
        if (start->size() != net.size() || start->k() != config.k)
            throw std::invalid_argument("start partition must cover all units with k nonempty clusters");
    }

    std::vector<detail::DescentOutcome> outcomes(config.restarts);
    auto run = [&](std::size_t r) {
        std::vector<int> s = (r == 0 && start)
                                 ? start->assignment()
                                 : detail::random_start(net.size(), config.k,
                                                        detail::splitmix64(config.seed + r));
        outcomes[r] = detail::descend(net, spec, config, std::move(s));
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(config.threads, config.restarts));
    if (threads == 1) {
        for (std::size_t r = 0; r < config.restarts; ++r) run(r);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t r = t; r < config.restarts; r += threads) run(r);
            });
    }

    // Best-of reduction keyed by (total, canonical partition).
    SearchResult result;
    std::map<std::vector<int>, Basin> basins;
    const detail::DescentOutcome* best = nullptr;
    for (const auto& o : outcomes) {
        result.evaluations += o.evaluations;
        auto [it, inserted] = basins.try_emplace(o.partition.assignment(), Basin{o.partition, o.total, 0});
        ++it->second.restarts;
        if (!best || o.total < best->total ||
            (o.total == best->total && o.partition < best->partition))
            best = &o;
    }
    const double tol = detail::tie_tolerance(best->total, config.optimum_epsilon);
    for (const auto& o : outcomes)
        if (o.total - best->total <= tol) ++result.restarts_reaching_best;
    for (auto& [key, basin] : basins) {
        result.basins.push_back(basin);
        if (basin.total - best->total <= tol && (config.collect_all_optima || basin.partition == best->partition))
            result.optima.push_back(basin.partition);
    }
    std::sort(result.basins.begin(), result.basins.end(), [](const Basin& a, const Basin& b) {
        return a.total != b.total ? a.total < b.total : a.partition < b.partition;
    });
    std::sort(result.optima.begin(), result.optima.end());
    result.best = total_inconsistency(net, best->partition, spec);
    return result;
}

/// Visits every partition of n units into exactly k nonempty clusters, as
/// restricted-growth strings in lexicographic order.
template <typename Visitor>
void for_each_partition(std::size_t n, std::size_t k, Visitor&& visit) {
    if (k == 0 || k > n) return;
    std::vector<int> a(n, 0);
    // max_used[i] = largest label among a[0..i]
    std::vector<int> max_used(n, 0);
    const int kk = static_cast<int>(k);
    std::size_t i = 1;
    if (n == 1) {
        visit(static_cast<const std::vector<int>&>(a));
        return;
    }
    a[1] = -1;
    while (true) {
        // advance position i
        const int limit = std::min(max_used[i - 1] + 1, kk - 1);
        if (a[i] < limit) {
            ++a[i];
            max_used[i] = std::max(max_used[i - 1], a[i]);
            // labels still missing must fit in the remaining positions
            const int missing = kk - 1 - max_used[i];
            if (missing > static_cast<int>(n - 1 - i)) continue;
            if (i + 1 == n) {
                if (max_used[i] == kk - 1) visit(static_cast<const std::vector<int>&>(a));
                continue;
            }
            ++i;
            a[i] = -1;
        } else {
            if (i == 1) break;
            --i;
        }
    }
}

/// Exact global optimum by enumeration of all canonical k-partitions.
inline SearchResult exhaustive_search(const ValuedNetwork& net, const ModelSpec& spec, std::size_t k,
                                      std::uint64_t budget = 5'000'000,
                                      double optimum_epsilon = 1e-9) {
    detail::validate_search(net, spec, k);
    const std::uint64_t count = stirling2(net.size(), k);
    if (count > budget)
        throw std::invalid_argument("exhaustive search would visit " + std::to_string(count) +
                                    " partitions, budget is " + std::to_string(budget));

    SearchResult result;
    double best_total = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, std::vector<int>>> candidates;
    for_each_partition(net.size(), k, [&](const std::vector<int>& a) {
        const Partition p = Partition::from_assignment(a, k);
        const double t = total_inconsistency(net, p, spec).total;
        ++result.evaluations;
        if (t < best_total) {
            best_total = t;
            const double tol = detail::tie_tolerance(best_total, optimum_epsilon);
            std::erase_if(candidates, [&](const auto& c) { return c.first - best_total > tol; });
        }
        if (t - best_total <= detail::tie_tolerance(best_total, optimum_epsilon))
            candidates.emplace_back(t, a);
    });

    std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first < y.first : x.second < y.second;
    });
    for (const auto& [t, a] : candidates) result.optima.push_back(Partition::from_assignment(a, k));
    std::sort(result.optima.begin(), result.optima.end());
    result.best = total_inconsistency(net, Partition::from_assignment(candidates.front().second, k), spec);
    result.restarts_reaching_best = 0;
    return result;
}

struct MultistartSummary {
    std::size_t restarts = 0;
    std::size_t distinct_local_optima = 0;
    std::vector<std::size_t> basin_sizes;  // descending
    std::size_t tie_multiplicity = 0;      // co-optimal partitions
    std::size_t restarts_reaching_best = 0;
    double best_total = 0.0;
};

inline MultistartSummary multistart_report(const SearchResult& result) {
    MultistartSummary s;
    s.distinct_local_optima = result.basins.size();
    for (const Basin& b : result.basins) {
        s.basin_sizes.push_back(b.restarts);
        s.restarts += b.restarts;
    }
    std::sort(s.basin_sizes.rbegin(), s.basin_sizes.rend());
    s.tie_multiplicity = result.optima.size();
    s.restarts_reaching_best = result.restarts_reaching_best;
    s.best_total = result.best.total;
    return s;
}

}  // namespace blockmodel
