#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "accelppa/pe.hpp"
#include "accelppa/workload.hpp"

namespace accelppa {

inline constexpr double kDefaultClockHz = 200e6;

// One point of the accelerator design space. Field names match the keys of
// the `key = value` config file.
struct AcceleratorConfig {
    std::int64_t rows = 1;
    std::int64_t cols = 1;
    std::int64_t ifmap_spad_B = 1;
    std::int64_t filter_spad_B = 1;
    std::int64_t psum_spad_B = 1;
    std::int64_t glb_B = 1;
    double bw_Bpc = 1.0;
    double clock_hz = kDefaultClockHz;
    PEType pe_type = PEType::INT16;
    int mac_cycles = 1;

    std::int64_t pe_count() const { return rows * cols; }
    std::int64_t spad_bytes_per_pe() const { return ifmap_spad_B + filter_spad_B + psum_spad_B; }

    // Type properties with the configured mac_cycles applied.
    PEProperties properties() const;

    bool operator==(const AcceleratorConfig&) const = default;
};

// Lexicographic order over every field, in declaration order.
bool config_less(const AcceleratorConfig& a, const AcceleratorConfig& b);

// Smallest per-PE scratchpads and global buffer that hold the row-stationary
// working set of one layer: one filter row, one ifmap row window of the same
// width, one partial sum, and one full filter (C*R*S) plus at least a byte of GLB.
struct StorageRequirement {
    std::int64_t ifmap_spad_B = 0;
    std::int64_t filter_spad_B = 0;
    std::int64_t psum_spad_B = 0;
    std::int64_t per_filter_B = 0;  // glb_B must strictly exceed this

    bool operator==(const StorageRequirement&) const = default;
};

StorageRequirement storage_requirement(const LayerConfig& layer, const PEProperties& pe);

// Field-level checks only (counts >= 1, bandwidth and clock > 0, mac_cycles >= 1).
void validate_fields(const AcceleratorConfig& cfg);

// A configuration proven able to run a particular network (or layer).
class ValidatedConfig {
public:
    const AcceleratorConfig& config() const { return cfg_; }
    const PEProperties& pe() const { return pe_; }

private:
    friend ValidatedConfig validate_config(const AcceleratorConfig&, const NetworkConfig&);
    friend ValidatedConfig validate_config(const AcceleratorConfig&, const LayerConfig&);
    explicit ValidatedConfig(const AcceleratorConfig& cfg) : cfg_(cfg), pe_(cfg.properties()) {}

    AcceleratorConfig cfg_;
    PEProperties pe_;
};

// Throws ValidationError for bad fields and InfeasibleConfig naming the
// first layer (in network order) whose working set does not fit.
ValidatedConfig validate_config(const AcceleratorConfig& cfg, const NetworkConfig& net);
ValidatedConfig validate_config(const AcceleratorConfig& cfg, const LayerConfig& layer);

AcceleratorConfig load_accelerator_config(std::string_view text, const std::string& source = "<arch>");
std::string serialize_accelerator_config(const AcceleratorConfig& cfg);

}  // namespace accelppa
