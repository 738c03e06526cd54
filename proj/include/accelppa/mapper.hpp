#pragma once

#include <cstdint>
#include <vector>

#include "accelppa/arch.hpp"
#include "accelppa/workload.hpp"

namespace accelppa {

// Row-stationary mapping of one layer.
//
// A logical PE set is r_tile filter rows by e_tile output rows. PE (i, j)
// keeps filter row i stationary and slides it across ifmap row U*j + i,
// producing f_tile partial sums of output row j; each column then reduces
// its r_tile partial-sum rows vertically. Filters taller than the array are
// split into fold_r folds. Sets are replicated v times vertically (over
// input channels) and h times horizontally (over output-row tiles). Edge
// tiles occupy a full logical set; lanes past the layer boundary idle.
struct MappingResult {
    std::int64_t r_tile = 0;
    std::int64_t e_tile = 0;
    std::int64_t f_tile = 0;
    std::int64_t fold_r = 0;
    std::int64_t v = 0;
    std::int64_t h = 0;
    std::int64_t work_units = 0;  // PE-set invocations
    std::int64_t rounds = 0;      // sequential rounds of up to v*h concurrent sets

    bool operator==(const MappingResult&) const = default;
};

// Element counts per storage level; DRAM traffic in bytes.
struct AccessCounts {
    std::int64_t mac_ops = 0;
    std::int64_t spad_ifmap_r = 0;
    std::int64_t spad_filter_r = 0;
    std::int64_t spad_psum_r = 0;
    std::int64_t spad_psum_w = 0;
    std::int64_t glb_ifmap_r = 0;
    std::int64_t glb_filter_r = 0;
    std::int64_t glb_psum_r = 0;
    std::int64_t glb_psum_w = 0;
    std::int64_t dram_bytes = 0;

    AccessCounts& operator+=(const AccessCounts& o);
    bool operator==(const AccessCounts&) const = default;
};

struct PerfResult {
    std::int64_t compute_cycles = 0;
    std::int64_t memory_cycles = 0;
    std::int64_t total_cycles = 0;  // compute and DRAM transfer fully overlap
    double utilization = 0.0;
    AccessCounts access;

    bool operator==(const PerfResult&) const = default;
};

struct NetworkPerf {
    PerfResult total;  // additive fields summed; utilization is the MAC-weighted mean
    std::vector<MappingResult> mappings;
    std::vector<PerfResult> layers;  // network order
};

MappingResult map_layer(const LayerConfig& layer, const ValidatedConfig& cfg);

// Tiered GLB-residency DRAM model. When the whole ifmap plus one filter fits
// in the GLB every tensor crosses the DRAM interface once; otherwise the
// ifmap is streamed in T tiles and all filters are re-read for each tile.
std::int64_t dram_traffic_bytes(const LayerConfig& layer, const ValidatedConfig& cfg);

PerfResult performance(const LayerConfig& layer, const MappingResult& m, const ValidatedConfig& cfg);

NetworkPerf network_performance(const NetworkConfig& net, const ValidatedConfig& cfg);
// Validates first; throws InfeasibleConfig naming the offending layer.
NetworkPerf network_performance(const NetworkConfig& net, const AcceleratorConfig& cfg);

}  // namespace accelppa
