#include "support/reference_sim.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <utility>
#include <vector>

namespace accelppa::testing {

namespace {

struct Unit {
    std::int64_t m, c, e0, f0, fold;
};

// How many blocks of `block` fit side by side in `extent`.
std::int64_t pack(std::int64_t block, std::int64_t extent) {
    std::int64_t n = 0;
    for (std::int64_t used = block; used <= extent; used += block) ++n;
    return n;
}

}  // namespace

SimResult simulate_row_stationary(const LayerConfig& l, const AcceleratorConfig& cfg) {
    const auto pe = cfg.properties();
    const std::int64_t R = l.filter_height, S = l.filter_width, U = l.stride;
    const std::int64_t E = l.out_height(), F = l.out_width();

    SimResult sim;
    // Logical set: as many filter rows as the array height allows, as many
    // output rows as its width allows, as many psums per PE as the psum
    // scratchpad holds.
    sim.r_tile = R;
    while (sim.r_tile > cfg.rows) --sim.r_tile;
    sim.e_tile = E;
    while (sim.e_tile > cfg.cols) --sim.e_tile;
    sim.f_tile = 1;
    while (sim.f_tile < F && (sim.f_tile + 1) * pe.psum_bits <= cfg.psum_spad_B * 8) ++sim.f_tile;
    for (std::int64_t k = 0; k < R; k += sim.r_tile) ++sim.folds;
    // A folded set already spans the array height.
    sim.v = sim.folds > 1 ? 1 : pack(sim.r_tile, cfg.rows);
    sim.h = pack(sim.e_tile, cfg.cols);

    std::vector<Unit> units;
    for (std::int64_t m = 0; m < l.out_channels; ++m)
        for (std::int64_t c = 0; c < l.in_channels; ++c)
            for (std::int64_t e0 = 0; e0 < E; e0 += sim.e_tile)
                for (std::int64_t f0 = 0; f0 < F; f0 += sim.f_tile)
                    for (std::int64_t fold = 0; fold < sim.folds; ++fold) units.push_back({m, c, e0, f0, fold});
    sim.work_units = static_cast<std::int64_t>(units.size());

    std::vector<char> written(static_cast<std::size_t>(l.out_channels * E * F), 0);
    const std::int64_t slots = sim.v * sim.h;

    for (std::size_t first = 0; first < units.size(); first += static_cast<std::size_t>(slots)) {
        const auto last = std::min(units.size(), first + static_cast<std::size_t>(slots));
        ++sim.rounds;
        std::int64_t round_cycles = 0;
        for (auto u = first; u < last; ++u) {
            const auto& unit = units[u];
            std::int64_t min_row = std::numeric_limits<std::int64_t>::max(), max_row = std::numeric_limits<std::int64_t>::min();
            std::int64_t min_col = min_row, max_col = max_row;
            std::set<std::pair<std::int64_t, std::int64_t>> filter_elems;
            std::int64_t set_cycles = 0;
            for (std::int64_t i = 0; i < sim.r_tile; ++i) {
                const auto k = unit.fold * sim.r_tile + i;  // filter row held by this PE row
                for (std::int64_t j = 0; j < sim.e_tile; ++j) {
                    const auto e = unit.e0 + j;  // output row of this PE column
                    std::int64_t pe_cycles = 0;
                    for (std::int64_t f = 0; f < sim.f_tile; ++f) {
                        const auto out_col = unit.f0 + f;
                        for (std::int64_t s = 0; s < S; ++s) {
                            pe_cycles += pe.mac_cycles;
                            const auto in_row = U * e + k;
                            const auto in_col = U * out_col + s;
                            min_row = std::min(min_row, in_row);
                            max_row = std::max(max_row, in_row);
                            min_col = std::min(min_col, in_col);
                            max_col = std::max(max_col, in_col);
                            filter_elems.insert({k, s});
                            if (e < E && out_col < F && k < R) ++sim.mac_ops;
                        }
                    }
                    set_cycles = std::max(set_cycles, pe_cycles);
                }
            }
            set_cycles += sim.r_tile;  // vertical partial-sum reduction, one hop per PE row
            round_cycles = std::max(round_cycles, set_cycles);

            sim.glb_ifmap_r += (max_row - min_row + 1) * (max_col - min_col + 1);
            sim.glb_filter_r += static_cast<std::int64_t>(filter_elems.size());
            for (std::int64_t e = unit.e0; e < std::min(E, unit.e0 + sim.e_tile); ++e) {
                for (std::int64_t f = unit.f0; f < std::min(F, unit.f0 + sim.f_tile); ++f) {
                    auto& seen = written[static_cast<std::size_t>((unit.m * E + e) * F + f)];
                    if (seen) ++sim.glb_psum_r;
                    ++sim.glb_psum_w;
                    seen = 1;
                }
            }
        }
        sim.compute_cycles += round_cycles;
    }
    return sim;
}

}  // namespace accelppa::testing
