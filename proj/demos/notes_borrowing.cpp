// Homogeneity and valued blockmodels of the notes-borrowing network.
#include <iostream>

#include "blockmodel/analysis.hpp"

using namespace blockmodel;

int main() {
    const ValuedNetwork net = datasets::notes_borrowing();

    ModelSpec hom;
    hom.approach = Approach::hom_ss();
    hom.allowed = AllowedBlocks(BlockTypeSet{BlockType::reg});
    hom.f = RowColFunction::mean;
    const SearchResult h = exhaustive_search(net, hom, 3);
    std::cout << "sum of squares, mean-regular: total " << h.best.total << "\n"
              << report::render_reordered(net, h.best.partition) << '\n';

    const MSuggestion s = suggest_m(net, h.best.partition, RowColFunction::sum, true);
    std::cout << "m candidates for sum-regular blocks:";
    for (double m : s.candidates) std::cout << ' ' << m;
    std::cout << "\n\n";

    ModelSpec val;
    val.approach = Approach::valued(5);
    val.f = RowColFunction::max;
    SearchConfig cfg;
    cfg.k = 3;
    cfg.restarts = 50;
    const SearchResult v = local_search(net, val, cfg);
    std::cout << "valued, null + max-regular, m = 5: total " << v.best.total << "\n"
              << report::image_csv(v.best.image) << report::render_reordered(net, v.best.partition);
}
