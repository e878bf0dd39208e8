#pragma once

#include <vector>

#include "network.hpp"

namespace blockmodel::datasets {

// Notes borrowing among 13 social-informatics students, surveyed May 1993
// (Hlebec, 1996). Cell (i, j): how often student i borrowed notes from
// student j, answered on a line of length 1..20 with 1 subtracted, so 0 means
// never. Transcribed cell by cell from the published valued-network figure;
// empty cells are 0. The reordered three-cluster rendering of the same data
// places two entries one column over (row 1: 3 under unit 12 rather than 13;
// row 4: 6 under unit 2 rather than 3). Both pairs of columns fall in the same
// cluster of that rendering; the original figure is kept verbatim here.
inline ValuedNetwork notes_borrowing() {
    static const std::vector<std::vector<double>> kMatrix = {
        // 1   2  3   4  5  6  7   8   9 10  11 12 13
        {0, 0, 0, 15, 0, 0, 0, 1, 8, 0, 0, 0, 3},     // 1
        {0, 0, 2, 3, 0, 0, 5, 5, 10, 10, 1, 3, 0},    // 2
        {0, 0, 0, 19, 0, 0, 0, 3, 1, 0, 0, 0, 0},     // 3
        {2, 0, 6, 0, 1, 0, 0, 1, 19, 0, 1, 0, 0},     // 4
        {0, 0, 0, 16, 0, 5, 0, 7, 16, 0, 5, 0, 3},    // 5
        {0, 0, 1, 0, 4, 0, 0, 7, 3, 0, 7, 3, 1},      // 6
        {0, 0, 6, 14, 0, 0, 0, 14, 6, 0, 0, 0, 0},    // 7
        {0, 0, 0, 5, 0, 0, 0, 0, 6, 0, 0, 0, 0},      // 8
        {0, 0, 0, 19, 0, 0, 0, 1, 0, 0, 0, 0, 0},     // 9
        {0, 16, 2, 16, 0, 1, 0, 16, 0, 0, 1, 2, 0},   // 10
        {0, 0, 2, 8, 2, 2, 0, 5, 14, 0, 0, 2, 0},     // 11
        {2, 2, 8, 2, 2, 2, 2, 2, 6, 2, 11, 0, 0},     // 12
        {0, 0, 0, 1, 8, 0, 0, 8, 3, 0, 0, 0, 0},      // 13
    };
    return load_network(kMatrix, {}, false);
}

/// The three-cluster partition of the mean-regular homogeneity solution:
/// {1,5,7,10,11 | 2,3,6,12,13 | 4,8,9} (1-based unit labels).
inline Partition notes_borrowing_mean_regular_partition() {
    return Partition::from_clusters({{0, 4, 6, 9, 10}, {1, 2, 5, 11, 12}, {3, 7, 8}}, 13);
}

}  // namespace blockmodel::datasets
