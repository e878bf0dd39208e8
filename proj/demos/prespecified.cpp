// Pre-specified core-periphery model on a small planted network.
#include <iostream>

#include "blockmodel/analysis.hpp"

using namespace blockmodel;

int main() {
    const ValuedNetwork net = load_network({{0, 4, 5, 3, 0, 0},
                                            {5, 0, 4, 0, 3, 0},
                                            {4, 5, 0, 0, 0, 3},
                                            {3, 0, 0, 0, 0, 0},
                                            {0, 3, 0, 0, 0, 0},
                                            {0, 0, 3, 0, 0, 0}},
                                           {"a", "b", "c", "x", "y", "z"});
    ModelSpec spec;
    spec.approach = Approach::valued(3);
    spec.f = RowColFunction::max;
    spec.allowed = AllowedBlocks(parse_blocks_matrix("com,rre|reg;cre|reg,null"));
    const SearchResult r = exhaustive_search(net, spec, 2);
    std::cout << "total " << r.best.total << ", " << r.optima.size() << " optimum\n"
              << report::partition_csv(net, r.best.partition) << report::image_csv(r.best.image);
}
