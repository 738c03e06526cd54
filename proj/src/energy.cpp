#include "accelppa/energy.hpp"

#include <optional>
#include <set>
#include <sstream>

#include "accelppa/error.hpp"
#include "accelppa/text.hpp"

namespace accelppa {

namespace {

std::string table_label(const EnergyTable& t) { return "energy table '" + std::string(to_string(t.pe_type)) + "'"; }

}  // namespace

void validate_energy_table(const EnergyTable& t) {
    const std::pair<const char*, double> entries[] = {
        {"e_mac", t.e_mac},     {"e_spad_r", t.e_spad_r}, {"e_spad_w", t.e_spad_w},
        {"e_glb_r", t.e_glb_r}, {"e_glb_w", t.e_glb_w},   {"e_dram", t.e_dram},
    };
    for (const auto& [key, v] : entries)
        if (!(v > 0.0)) throw ValidationError(table_label(t) + ": " + key + " must be > 0");
    if (!(t.e_dram > t.e_glb_r))
        throw ValidationError(table_label(t) + ": requires e_dram > e_glb_r");
    if (!(t.e_glb_r > t.e_spad_r))
        throw ValidationError(table_label(t) + ": requires e_glb_r > e_spad_r");
}

// Scaled from published 45 nm per-operation figures: fp32 fused multiply-add
// around 4.6 pJ, 16-bit integer MAC around 1 pJ, 8-bit shift-add and single
// shift datapaths well below that, SRAM buffers at a few pJ per byte and
// off-chip DRAM around 100 pJ per byte.
EnergyTable default_energy_table(PEType t) {
    constexpr double glb_r = 1.5e-12, glb_w = 1.8e-12, dram = 1e-10;
    switch (t) {
        case PEType::FP32: return {t, 4.6e-12, 4e-13, 4.5e-13, glb_r, glb_w, dram};
        case PEType::INT16: return {t, 1.1e-12, 2e-13, 2.2e-13, glb_r, glb_w, dram};
        case PEType::LightPE2: return {t, 2.5e-13, 1e-13, 1.1e-13, glb_r, glb_w, dram};
        case PEType::LightPE1: return {t, 1e-13, 8e-14, 9e-14, glb_r, glb_w, dram};
    }
    throw std::logic_error("default_energy_table: bad PEType");
}

EnergyTables::EnergyTables() {
    for (auto t : kPETypesByCost) tables_[t] = default_energy_table(t);
}

void EnergyTables::validate() const {
    for (const auto& [type, table] : tables_) validate_energy_table(table);
    for (std::size_t i = 0; i + 1 < kPETypesByCost.size(); ++i) {
        const auto& cheap = at(kPETypesByCost[i]);
        const auto& costly = at(kPETypesByCost[i + 1]);
        if (!(cheap.e_mac < costly.e_mac))
            throw ValidationError("energy tables: e_mac(" + std::string(to_string(cheap.pe_type)) + ") must be < e_mac(" +
                                  std::string(to_string(costly.pe_type)) + ")");
    }
}

EnergyTables load_energy_tables(std::string_view content, const std::string& source) {
    EnergyTables tables;
    std::map<PEType, EnergyTable> updates;
    std::map<PEType, std::set<std::string>> seen;
    std::optional<PEType> file_type;

    const auto kvs = text::parse_key_values(content, source);
    for (const auto& kv : kvs) {
        if (kv.section.empty() && kv.key == "pe_type") {
            try {
                file_type = parse_pe_type(kv.value);
            } catch (const InputError& e) {
                throw ParseError(source, kv.line, e.what());
            }
        }
    }
    for (const auto& kv : kvs) {
        if (kv.section.empty() && kv.key == "pe_type") continue;
        PEType type{};
        if (!kv.section.empty()) {
            try {
                type = parse_pe_type(kv.section);
            } catch (const InputError& e) {
                throw ParseError(source, kv.line, e.what());
            }
        } else if (file_type) {
            type = *file_type;
        } else {
            throw ParseError(source, kv.line, "entry outside a [pe_type] section and no 'pe_type' key");
        }
        auto [it, inserted] = updates.try_emplace(type, tables.at(type));
        if (!seen[type].insert(kv.key).second)
            throw ParseError(source, kv.line, "duplicate key '" + kv.key + "'");
        const double v = text::parse_double(kv.value, source, kv.line);
        auto& t = it->second;
        if (kv.key == "e_mac") t.e_mac = v;
        else if (kv.key == "e_spad_r") t.e_spad_r = v;
        else if (kv.key == "e_spad_w") t.e_spad_w = v;
        else if (kv.key == "e_glb_r") t.e_glb_r = v;
        else if (kv.key == "e_glb_w") t.e_glb_w = v;
        else if (kv.key == "e_dram") t.e_dram = v;
        else throw ParseError(source, kv.line, "unknown key '" + kv.key + "'");
    }
    for (const auto& [type, t] : updates) tables.set(t);
    try {
        tables.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(source + ": " + e.what());
    }
    return tables;
}

std::string serialize_energy_tables(const EnergyTables& tables) {
    std::ostringstream out;
    out << "# per-event energies in joules; e_glb_* and e_dram per byte\n";
    for (auto type : kPETypesByCost) {
        const auto& t = tables.at(type);
        out << "\n[" << to_string(type) << "]\n"
            << "e_mac = " << text::format_double(t.e_mac) << '\n'
            << "e_spad_r = " << text::format_double(t.e_spad_r) << '\n'
            << "e_spad_w = " << text::format_double(t.e_spad_w) << '\n'
            << "e_glb_r = " << text::format_double(t.e_glb_r) << '\n'
            << "e_glb_w = " << text::format_double(t.e_glb_w) << '\n'
            << "e_dram = " << text::format_double(t.e_dram) << '\n';
    }
    return out.str();
}

double layer_energy(const AccessCounts& c, const EnergyTable& t) {
    const auto pe = pe_type_properties(t.pe_type);
    const auto d = [](std::int64_t n) { return static_cast<double>(n); };
    return d(c.mac_ops) * t.e_mac +
           d(c.spad_ifmap_r + c.spad_filter_r + c.spad_psum_r) * t.e_spad_r +
           d(c.spad_psum_w) * t.e_spad_w +
           d(c.glb_ifmap_r) * t.e_glb_r * pe.act_bytes() +
           d(c.glb_filter_r) * t.e_glb_r * pe.weight_bytes() +
           d(c.glb_psum_r) * t.e_glb_r * pe.psum_bytes() +
           d(c.glb_psum_w) * t.e_glb_w * pe.psum_bytes() +
           d(c.dram_bytes) * t.e_dram;
}

double power_based_energy(double power_mW, std::int64_t cycles, double clock_hz) {
    return power_mW * 1e-3 * (static_cast<double>(cycles) / clock_hz);
}

}  // namespace accelppa
