#include "accelppa/dse.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "accelppa/error.hpp"
#include "accelppa/mapper.hpp"
#include "accelppa/text.hpp"

namespace accelppa {

// ---- sweep spec ------------------------------------------------------------

std::size_t SweepSpec::cartesian_size() const {
    const std::pair<const char*, std::size_t> sizes[] = {
        {"rows", rows.size()},          {"cols", cols.size()},     {"ifmap_spad_B", ifmap_spad_B.size()},
        {"filter_spad_B", filter_spad_B.size()}, {"psum_spad_B", psum_spad_B.size()}, {"glb_B", glb_B.size()},
        {"bw_Bpc", bw_Bpc.size()},      {"pe_type", pe_type.size()},
    };
    std::size_t total = 1;
    for (const auto& [name, n] : sizes) {
        if (n == 0) throw ValidationError(std::string("sweep list '") + name + "' is empty");
        if (total > std::numeric_limits<std::size_t>::max() / n)
            throw ValidationError("sweep design space size overflows");
        total *= n;
    }
    return total;
}

AcceleratorConfig SweepSpec::point(std::size_t index) const {
    AcceleratorConfig c;
    c.clock_hz = clock_hz;
    c.mac_cycles = mac_cycles;
    const auto take = [&index](const auto& list) {
        const auto& v = list[index % list.size()];
        index /= list.size();
        return v;
    };
    // innermost first
    c.pe_type = take(pe_type);
    c.bw_Bpc = take(bw_Bpc);
    c.glb_B = take(glb_B);
    c.psum_spad_B = take(psum_spad_B);
    c.filter_spad_B = take(filter_spad_B);
    c.ifmap_spad_B = take(ifmap_spad_B);
    c.cols = take(cols);
    c.rows = take(rows);
    return c;
}

SweepSpec load_sweep_spec(std::string_view content, const std::string& source) {
    SweepSpec spec;
    std::set<std::string> seen;
    for (const auto& kv : text::parse_key_values(content, source)) {
        if (!seen.insert(kv.key).second) throw ParseError(source, kv.line, "duplicate key '" + kv.key + "'");
        const auto fields = text::split(kv.value, ',');
        const auto ints = [&] {
            std::vector<std::int64_t> out;
            for (auto f : fields) {
                const auto v = text::parse_int(f, source, kv.line);
                if (v < 1) throw ParseError(source, kv.line, kv.key + " values must be >= 1");
                out.push_back(v);
            }
            return out;
        };
        if (kv.key == "rows") spec.rows = ints();
        else if (kv.key == "cols") spec.cols = ints();
        else if (kv.key == "ifmap_spad_B") spec.ifmap_spad_B = ints();
        else if (kv.key == "filter_spad_B") spec.filter_spad_B = ints();
        else if (kv.key == "psum_spad_B") spec.psum_spad_B = ints();
        else if (kv.key == "glb_B") spec.glb_B = ints();
        else if (kv.key == "bw_Bpc") {
            for (auto f : fields) {
                const auto v = text::parse_double(f, source, kv.line);
                if (!(v > 0.0)) throw ParseError(source, kv.line, "bw_Bpc values must be > 0");
                spec.bw_Bpc.push_back(v);
            }
        } else if (kv.key == "pe_type") {
            for (auto f : fields) {
                try {
                    spec.pe_type.push_back(parse_pe_type(f));
                } catch (const InputError& e) {
                    throw ParseError(source, kv.line, e.what());
                }
            }
        } else if (kv.key == "network") {
            spec.network = kv.value;
        } else if (kv.key == "clock_hz") {
            spec.clock_hz = text::parse_double(kv.value, source, kv.line);
            if (!(spec.clock_hz > 0.0)) throw ParseError(source, kv.line, "clock_hz must be > 0");
        } else if (kv.key == "mac_cycles") {
            const auto v = text::parse_int(kv.value, source, kv.line);
            if (v < 1) throw ParseError(source, kv.line, "mac_cycles must be >= 1");
            spec.mac_cycles = static_cast<int>(v);
        } else if (kv.key == "max_points") {
            const auto v = text::parse_int(kv.value, source, kv.line);
            if (v < 1) throw ParseError(source, kv.line, "max_points must be >= 1");
            spec.max_points = static_cast<std::size_t>(v);
        } else {
            throw ParseError(source, kv.line, "unknown key '" + kv.key + "'");
        }
    }
    try {
        spec.cartesian_size();
    } catch (const ValidationError& e) {
        throw ValidationError(source + ": " + e.what());
    }
    return spec;
}

// ---- cost source -----------------------------------------------------------

CostSource CostSource::oracle(std::uint64_t seed) {
    CostSource c;
    c.oracle_seed_ = seed;
    return c;
}

CostSource CostSource::fitted(std::vector<RegressionModel> models) {
    CostSource c;
    for (auto& m : models) {
        const auto key = std::pair(m.target, m.pe_type);
        if (c.models_.contains(key))
            throw ModelError("more than one " + std::string(to_string(m.target)) + " model for pe_type " +
                             std::string(to_string(m.pe_type)));
        c.models_.emplace(key, std::move(m));
    }
    return c;
}

void CostSource::require_types(std::span<const PEType> types) const {
    if (is_oracle()) return;
    for (auto t : types)
        for (auto target : {CostTarget::power, CostTarget::area})
            if (!models_.contains({target, t}))
                throw ModelError("missing " + std::string(to_string(target)) + " model for pe_type " +
                                 std::string(to_string(t)));
}

CostSource::Estimate CostSource::estimate(const AcceleratorConfig& cfg) const {
    if (is_oracle()) {
        const auto s = synth_oracle(cfg, *oracle_seed_);
        return {s.area_mm2, s.power_mW, false};
    }
    require_types(std::span(&cfg.pe_type, 1));
    const auto area = predict(models_.at({CostTarget::area, cfg.pe_type}), cfg);
    const auto power = predict(models_.at({CostTarget::power, cfg.pe_type}), cfg);
    return {area.value, power.value, area.clamped || power.clamped};
}

// ---- evaluation ------------------------------------------------------------

DesignPoint evaluate_point(const AcceleratorConfig& cfg, const NetworkConfig& net, const CostSource& cost,
                           const EnergyTables& tables) {
    DesignPoint p;
    p.cfg = cfg;
    std::optional<ValidatedConfig> vc;
    try {
        vc = validate_config(cfg, net);
    } catch (const InfeasibleConfig& e) {
        p.reason = e.what();
        return p;
    }
    const auto perf = network_performance(net, *vc);
    const auto& table = tables.at(cfg.pe_type);
    for (const auto& layer : perf.layers) p.energy_J += layer_energy(layer.access, table);
    const auto est = cost.estimate(cfg);
    p.feasible = true;
    p.total_cycles = perf.total.total_cycles;
    p.latency_s = static_cast<double>(perf.total.total_cycles) / cfg.clock_hz;
    p.area_mm2 = est.area_mm2;
    p.power_mW = est.power_mW;
    p.cost_clamped = est.clamped;
    p.energy_power_J = power_based_energy(est.power_mW, perf.total.total_cycles, cfg.clock_hz);
    p.perf_per_area = (1.0 / p.latency_s) / p.area_mm2;
    return p;
}

SweepResult sweep(const SweepSpec& spec, const NetworkConfig& net, const CostSource& cost,
                  const EnergyTables& tables, unsigned threads) {
    cost.require_types(spec.pe_type);
    SweepResult out;
    out.space_size = spec.cartesian_size();
    auto n = out.space_size;
    if (spec.max_points && *spec.max_points < n) {
        n = *spec.max_points;
        out.truncated = true;
    }
    out.points.resize(n);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out.points[i] = evaluate_point(spec.point(i), net, cost, tables);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

// ---- Pareto ----------------------------------------------------------------

ParetoResult pareto_front(std::span<const Objectives> pts) {
    if (pts.empty()) throw std::invalid_argument("pareto_front: empty input");
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (pts[a].perf_per_area != pts[b].perf_per_area) return pts[a].perf_per_area > pts[b].perf_per_area;
        if (pts[a].energy_J != pts[b].energy_J) return pts[a].energy_J < pts[b].energy_J;
        return a < b;
    });

    ParetoResult r;
    double best_energy_above = std::numeric_limits<double>::infinity();  // over strictly higher perf/area
    for (std::size_t g = 0; g < order.size();) {
        const double ppa = pts[order[g]].perf_per_area;
        const double lead = pts[order[g]].energy_J;
        std::size_t end = g;
        while (end < order.size() && pts[order[end]].perf_per_area == ppa) ++end;
        if (lead < best_energy_above) {
            r.frontier.push_back(order[g]);
            for (std::size_t i = g + 1; i < end && pts[order[i]].energy_J == lead; ++i) r.duplicates.push_back(order[i]);
        }
        best_energy_above = std::min(best_energy_above, lead);
        g = end;
    }
    return r;
}

ParetoResult pareto(std::vector<DesignPoint>& points) {
    std::vector<std::size_t> feasible;
    std::vector<Objectives> objectives;
    for (std::size_t i = 0; i < points.size(); ++i) {
        points[i].on_frontier = false;
        points[i].duplicate = false;
        if (!points[i].feasible) continue;
        feasible.push_back(i);
        objectives.push_back({points[i].perf_per_area, points[i].energy_J});
    }
    if (feasible.empty()) throw ValidationError("no feasible design points");
    auto r = pareto_front(objectives);
    for (auto& i : r.frontier) {
        i = feasible[i];
        points[i].on_frontier = true;
    }
    for (auto& i : r.duplicates) {
        i = feasible[i];
        points[i].duplicate = true;
    }
    return r;
}

// ---- normalization ---------------------------------------------------------

std::size_t select_baseline(std::span<const DesignPoint> points) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (!p.feasible || p.cfg.pe_type != PEType::INT16) continue;
        if (!best) {
            best = i;
            continue;
        }
        const auto& b = points[*best];
        const bool better = p.perf_per_area != b.perf_per_area ? p.perf_per_area > b.perf_per_area
                            : p.energy_J != b.energy_J       ? p.energy_J < b.energy_J
                                                             : config_less(p.cfg, b.cfg);
        if (better) best = i;
    }
    if (!best) throw NoBaseline();
    return *best;
}

std::size_t normalize(std::vector<DesignPoint>& points) {
    const auto b = select_baseline(points);
    const double ppa = points[b].perf_per_area;
    const double energy = points[b].energy_J;
    for (auto& p : points) {
        if (!p.feasible) {
            p.norm_ppa.reset();
            p.norm_energy.reset();
            continue;
        }
        p.norm_ppa = p.perf_per_area / ppa;
        p.norm_energy = p.energy_J / energy;
    }
    points[b].norm_ppa = 1.0;
    points[b].norm_energy = 1.0;
    return b;
}

std::vector<TypeSummary> summarize(std::span<const DesignPoint> points) {
    std::vector<TypeSummary> out;
    for (auto type : kPETypesByCost) {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& p = points[i];
            if (!p.feasible || p.cfg.pe_type != type || !p.norm_ppa) continue;
            if (!best) {
                best = i;
                continue;
            }
            const auto& b = points[*best];
            const bool better = *p.norm_ppa != *b.norm_ppa         ? *p.norm_ppa > *b.norm_ppa
                                : *p.norm_energy != *b.norm_energy ? *p.norm_energy < *b.norm_energy
                                                                   : config_less(p.cfg, b.cfg);
            if (better) best = i;
        }
        if (!best) continue;
        const auto& p = points[*best];
        out.push_back({type, *best, *p.norm_ppa, *p.norm_energy, *p.norm_ppa, 1.0 / *p.norm_energy});
    }
    return out;
}

}  // namespace accelppa
