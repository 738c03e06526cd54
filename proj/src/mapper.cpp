#include "accelppa/mapper.hpp"

#include <algorithm>
#include <cmath>

namespace accelppa {

namespace {

constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

AccessCounts& AccessCounts::operator+=(const AccessCounts& o) {
    mac_ops += o.mac_ops;
    spad_ifmap_r += o.spad_ifmap_r;
    spad_filter_r += o.spad_filter_r;
    spad_psum_r += o.spad_psum_r;
    spad_psum_w += o.spad_psum_w;
    glb_ifmap_r += o.glb_ifmap_r;
    glb_filter_r += o.glb_filter_r;
    glb_psum_r += o.glb_psum_r;
    glb_psum_w += o.glb_psum_w;
    dram_bytes += o.dram_bytes;
    return *this;
}

MappingResult map_layer(const LayerConfig& l, const ValidatedConfig& vc) {
    const auto& cfg = vc.config();
    const auto R = l.filter_height;
    const auto E = l.out_height();
    const auto F = l.out_width();

    MappingResult m;
    m.r_tile = std::min(R, cfg.rows);
    m.fold_r = R > cfg.rows ? ceil_div(R, cfg.rows) : 1;
    m.v = R <= cfg.rows ? cfg.rows / R : 1;
    m.e_tile = std::min(E, cfg.cols);
    m.h = cfg.cols / m.e_tile;
    const auto psums_per_pe = cfg.psum_spad_B * 8 / vc.pe().psum_bits;
    m.f_tile = std::min(F, psums_per_pe);
    m.work_units = l.out_channels * l.in_channels * ceil_div(E, m.e_tile) * ceil_div(F, m.f_tile) * m.fold_r;
    m.rounds = ceil_div(m.work_units, m.v * m.h);
    return m;
}

std::int64_t dram_traffic_bytes(const LayerConfig& l, const ValidatedConfig& vc) {
    const auto& pe = vc.pe();
    const auto glb = vc.config().glb_B;
    const auto t = layer_tensor_bytes(l, pe);
    const auto per_filter = bytes_for(l.in_channels * l.filter_height * l.filter_width, pe.weight_bits);
    if (t.ifmap + per_filter <= glb) return t.ifmap + t.filter + t.ofmap;
    const auto ifmap_tiles = ceil_div(t.ifmap, glb - per_filter);
    return t.ifmap + ifmap_tiles * t.filter + t.ofmap;
}

PerfResult performance(const LayerConfig& l, const MappingResult& m, const ValidatedConfig& vc) {
    const auto& cfg = vc.config();
    const auto S = l.filter_width;
    const auto U = l.stride;
    const auto EF = l.out_channels * l.out_height() * l.out_width();
    const auto macs = layer_macs(l);

    PerfResult p;
    const auto cycles_per_round = vc.pe().mac_cycles * S * m.f_tile + m.r_tile;
    p.compute_cycles = m.rounds * cycles_per_round;

    auto& a = p.access;
    a.mac_ops = macs;
    a.spad_ifmap_r = macs;
    a.spad_filter_r = macs;
    a.spad_psum_r = macs;
    a.spad_psum_w = macs;
    const auto ifmap_per_unit = (U * (m.e_tile - 1) + m.r_tile) * (U * (m.f_tile - 1) + S);
    a.glb_ifmap_r = ifmap_per_unit * m.work_units;
    a.glb_filter_r = m.r_tile * S * m.work_units;
    const auto groups = l.in_channels * m.fold_r;  // accumulation passes per output
    a.glb_psum_w = groups * EF;
    a.glb_psum_r = (groups - 1) * EF;
    a.dram_bytes = dram_traffic_bytes(l, vc);

    p.memory_cycles = static_cast<std::int64_t>(std::ceil(static_cast<double>(a.dram_bytes) / cfg.bw_Bpc));
    p.total_cycles = std::max(p.compute_cycles, p.memory_cycles);
    p.utilization = static_cast<double>(macs * vc.pe().mac_cycles) /
                    (static_cast<double>(p.compute_cycles) * static_cast<double>(cfg.rows * cfg.cols));
    return p;
}

NetworkPerf network_performance(const NetworkConfig& net, const ValidatedConfig& vc) {
    NetworkPerf out;
    double weighted_util = 0.0;
    for (const auto& l : net.layers) {
        const auto m = map_layer(l, vc);
        const auto p = performance(l, m, vc);
        out.total.compute_cycles += p.compute_cycles;
        out.total.memory_cycles += p.memory_cycles;
        out.total.total_cycles += p.total_cycles;
        out.total.access += p.access;
        weighted_util += static_cast<double>(p.access.mac_ops) * p.utilization;
        out.mappings.push_back(m);
        out.layers.push_back(p);
    }
    if (out.total.access.mac_ops > 0)
        out.total.utilization = weighted_util / static_cast<double>(out.total.access.mac_ops);
    return out;
}

NetworkPerf network_performance(const NetworkConfig& net, const AcceleratorConfig& cfg) {
    return network_performance(net, validate_config(cfg, net));
}

}  // namespace accelppa
