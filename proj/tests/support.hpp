#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "blockmodel/network.hpp"

namespace testsupport {

using blockmodel::BlockView;
using blockmodel::DiagonalPolicy;

/// Off-diagonal block from row-major nested lists.
inline BlockView block(const std::vector<std::vector<double>>& cells, bool diagonal = false,
                       DiagonalPolicy policy = DiagonalPolicy::ignore) {
    BlockView b;
    for (std::size_t r = 0; r < cells.size(); ++r) b.rows.push_back(r);
    for (std::size_t c = 0; c < cells.front().size(); ++c) b.cols.push_back(c);
    for (const auto& row : cells) b.values.insert(b.values.end(), row.begin(), row.end());
    b.is_diagonal = diagonal;
    b.diagonal_policy = policy;
    return b;
}

/// Random block; diagonal blocks are square. `levels` = 2 gives {0,1} values.
inline BlockView random_block(std::mt19937_64& rng, bool diagonal, DiagonalPolicy policy,
                              int levels, std::size_t max_size = 8) {
    std::uniform_int_distribution<std::size_t> size(1, max_size);
    std::uniform_int_distribution<int> value(0, levels - 1);
    std::bernoulli_distribution sparse(0.4);
    const std::size_t nr = size(rng);
    const std::size_t nc = diagonal ? nr : size(rng);
    std::vector<std::vector<double>> cells(nr, std::vector<double>(nc));
    for (auto& row : cells)
        for (auto& v : row) v = sparse(rng) ? 0.0 : value(rng);
    return block(cells, diagonal, policy);
}

inline blockmodel::ValuedNetwork random_network(std::mt19937_64& rng, std::size_t n, int levels) {
    std::uniform_int_distribution<int> value(0, levels - 1);
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (auto& row : m)
        for (auto& v : row) v = value(rng);
    return blockmodel::load_network(m);
}

}  // namespace testsupport
