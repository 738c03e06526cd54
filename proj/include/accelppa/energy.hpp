#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "accelppa/mapper.hpp"
#include "accelppa/pe.hpp"

namespace accelppa {

// Per-event energies for one PE type, in joules.
//
// e_mac is per MAC and e_spad_* per scratchpad element access (the element
// width of the type is already folded into the value). e_glb_* and e_dram are
// per byte; GLB element counts are scaled by the element width of the tensor
// they belong to (activation, weight, or partial sum).
struct EnergyTable {
    PEType pe_type = PEType::INT16;
    double e_mac = 0.0;
    double e_spad_r = 0.0;
    double e_spad_w = 0.0;
    double e_glb_r = 0.0;
    double e_glb_w = 0.0;
    double e_dram = 0.0;

    bool operator==(const EnergyTable&) const = default;
};

// Entries > 0 and e_dram > e_glb_r > e_spad_r. Throws ValidationError.
void validate_energy_table(const EnergyTable& t);

EnergyTable default_energy_table(PEType t);

// One table per PE type, with e_mac strictly increasing in datapath cost
// (LightPE-1 < LightPE-2 < INT16 < FP32).
class EnergyTables {
public:
    EnergyTables();  // shipped defaults

    const EnergyTable& at(PEType t) const { return tables_.at(t); }
    // Replaces one table. Ordering is re-checked by validate().
    void set(const EnergyTable& t) { tables_[t.pe_type] = t; }
    void validate() const;

private:
    std::map<PEType, EnergyTable> tables_;
};

// `key = value` entries. Either a single-type file carrying `pe_type = ...`
// or `[fp32]`-style sections; types not mentioned keep their defaults.
EnergyTables load_energy_tables(std::string_view content, const std::string& source = "<energy>");
std::string serialize_energy_tables(const EnergyTables& tables);

double layer_energy(const AccessCounts& counts, const EnergyTable& table);

// Energy from an average power figure over a run of `cycles` cycles.
double power_based_energy(double power_mW, std::int64_t cycles, double clock_hz);

}  // namespace accelppa
