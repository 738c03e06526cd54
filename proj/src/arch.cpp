#include "accelppa/arch.hpp"

#include <set>
#include <sstream>
#include <tuple>

#include "accelppa/error.hpp"
#include "accelppa/text.hpp"

namespace accelppa {

PEProperties AcceleratorConfig::properties() const {
    auto p = pe_type_properties(pe_type);
    p.mac_cycles = mac_cycles;
    return p;
}

bool config_less(const AcceleratorConfig& a, const AcceleratorConfig& b) {
    const auto key = [](const AcceleratorConfig& c) {
        return std::tuple(c.rows, c.cols, c.ifmap_spad_B, c.filter_spad_B, c.psum_spad_B, c.glb_B,
                          c.bw_Bpc, c.clock_hz, static_cast<int>(c.pe_type), c.mac_cycles);
    };
    return key(a) < key(b);
}

StorageRequirement storage_requirement(const LayerConfig& l, const PEProperties& pe) {
    return {
        bytes_for(l.filter_width, pe.act_bits),
        bytes_for(l.filter_width, pe.weight_bits),
        bytes_for(1, pe.psum_bits),
        bytes_for(l.in_channels * l.filter_height * l.filter_width, pe.weight_bits),
    };
}

void validate_fields(const AcceleratorConfig& c) {
    const auto positive = [](std::int64_t v, const char* key) {
        if (v < 1) throw ValidationError(std::string(key) + " must be >= 1 (got " + std::to_string(v) + ")");
    };
    positive(c.rows, "rows");
    positive(c.cols, "cols");
    positive(c.ifmap_spad_B, "ifmap_spad_B");
    positive(c.filter_spad_B, "filter_spad_B");
    positive(c.psum_spad_B, "psum_spad_B");
    positive(c.glb_B, "glb_B");
    positive(c.mac_cycles, "mac_cycles");
    if (!(c.bw_Bpc > 0.0)) throw ValidationError("bw_Bpc must be > 0 (got " + text::format_double(c.bw_Bpc) + ")");
    if (!(c.clock_hz > 0.0)) throw ValidationError("clock_hz must be > 0 (got " + text::format_double(c.clock_hz) + ")");
}

namespace {

void check_layer(const AcceleratorConfig& c, const PEProperties& pe, const LayerConfig& l) {
    validate_layer(l);
    const auto need = storage_requirement(l, pe);
    const auto fail = [&](const char* resource, const std::string& detail) {
        throw InfeasibleConfig(l.name, resource, "layer '" + l.name + "': " + detail);
    };
    if (c.filter_spad_B < need.filter_spad_B)
        fail("filter_spad_B", "filter scratchpad too small: filter_spad_B=" + std::to_string(c.filter_spad_B) +
                                  " < " + std::to_string(need.filter_spad_B) + " bytes for one filter row (S=" +
                                  std::to_string(l.filter_width) + ", " + std::to_string(pe.weight_bits) + "-bit weights)");
    if (c.ifmap_spad_B < need.ifmap_spad_B)
        fail("ifmap_spad_B", "ifmap scratchpad too small: ifmap_spad_B=" + std::to_string(c.ifmap_spad_B) +
                                 " < " + std::to_string(need.ifmap_spad_B) + " bytes for one ifmap row window (S=" +
                                 std::to_string(l.filter_width) + ", " + std::to_string(pe.act_bits) + "-bit activations)");
    if (c.psum_spad_B < need.psum_spad_B)
        fail("psum_spad_B", "psum scratchpad too small: psum_spad_B=" + std::to_string(c.psum_spad_B) + " < " +
                                std::to_string(need.psum_spad_B) + " bytes for one " + std::to_string(pe.psum_bits) +
                                "-bit partial sum");
    if (c.glb_B <= need.per_filter_B)
        fail("glb_B", "global buffer too small: glb_B=" + std::to_string(c.glb_B) + " must exceed the " +
                          std::to_string(need.per_filter_B) + "-byte per-filter footprint (C*R*S)");
}

}  // namespace

ValidatedConfig validate_config(const AcceleratorConfig& cfg, const NetworkConfig& net) {
    validate_fields(cfg);
    const auto pe = cfg.properties();
    for (const auto& l : net.layers) check_layer(cfg, pe, l);
    return ValidatedConfig(cfg);
}

ValidatedConfig validate_config(const AcceleratorConfig& cfg, const LayerConfig& layer) {
    validate_fields(cfg);
    check_layer(cfg, cfg.properties(), layer);
    return ValidatedConfig(cfg);
}

AcceleratorConfig load_accelerator_config(std::string_view content, const std::string& source) {
    AcceleratorConfig c;
    std::set<std::string> seen;
    const std::set<std::string> required{"rows", "cols", "ifmap_spad_B", "filter_spad_B",
                                         "psum_spad_B", "glb_B", "bw_Bpc", "pe_type"};
    for (const auto& kv : text::parse_key_values(content, source)) {
        if (!seen.insert(kv.key).second) throw ParseError(source, kv.line, "duplicate key '" + kv.key + "'");
        const auto as_int = [&] { return text::parse_int(kv.value, source, kv.line); };
        if (kv.key == "rows") c.rows = as_int();
        else if (kv.key == "cols") c.cols = as_int();
        else if (kv.key == "ifmap_spad_B") c.ifmap_spad_B = as_int();
        else if (kv.key == "filter_spad_B") c.filter_spad_B = as_int();
        else if (kv.key == "psum_spad_B") c.psum_spad_B = as_int();
        else if (kv.key == "glb_B") c.glb_B = as_int();
        else if (kv.key == "bw_Bpc") c.bw_Bpc = text::parse_double(kv.value, source, kv.line);
        else if (kv.key == "clock_hz") c.clock_hz = text::parse_double(kv.value, source, kv.line);
        else if (kv.key == "mac_cycles") c.mac_cycles = static_cast<int>(as_int());
        else if (kv.key == "pe_type") {
            try {
                c.pe_type = parse_pe_type(kv.value);
            } catch (const InputError& e) {
                throw ParseError(source, kv.line, e.what());
            }
        } else {
            throw ParseError(source, kv.line, "unknown key '" + kv.key + "'");
        }
    }
    for (const auto& k : required)
        if (!seen.contains(k)) throw ValidationError(source + ": missing required key '" + k + "'");
    try {
        validate_fields(c);
    } catch (const ValidationError& e) {
        throw ValidationError(source + ": " + e.what());
    }
    return c;
}

std::string serialize_accelerator_config(const AcceleratorConfig& c) {
    std::ostringstream out;
    out << "rows = " << c.rows << "\ncols = " << c.cols << "\nifmap_spad_B = " << c.ifmap_spad_B
        << "\nfilter_spad_B = " << c.filter_spad_B << "\npsum_spad_B = " << c.psum_spad_B
        << "\nglb_B = " << c.glb_B << "\nbw_Bpc = " << text::format_double(c.bw_Bpc)
        << "\nclock_hz = " << text::format_double(c.clock_hz) << "\npe_type = " << to_string(c.pe_type)
        << "\nmac_cycles = " << c.mac_cycles << "\n";
    return out.str();
}

}  // namespace accelppa
